//! CART-style regression trees and bagged random forests.
//!
//! Trees split on the (column, midpoint) candidate minimizing the summed
//! child squared error. Forest predictions are the mean of tree predictions,
//! which makes every prediction a convex combination of training responses;
//! `extract_weights` materializes those weights explicitly.
//!
//! Trees are stored as flat node arenas. Fitting keeps one (value, instance)
//! array per column, presorted by the column's value and stably partitioned
//! at each split, so no sorting happens inside the tree.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::DataMatrix;
use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Forest hyperparameters. `bootstrap` is a test hook; production fits
/// resample n rows with replacement per tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub mtry: usize,
    pub nodesize: usize,
    pub seed: u64,
    pub bootstrap: bool,
}

pub const DEFAULT_N_TREES: usize = 500;

impl ForestParams {
    pub fn new(mtry: usize, nodesize: usize, seed: u64) -> Self {
        ForestParams {
            n_trees: DEFAULT_N_TREES,
            mtry,
            nodesize,
            seed,
            bootstrap: true,
        }
    }

    pub fn with_n_trees(mut self, n_trees: usize) -> Self {
        self.n_trees = n_trees;
        self
    }

    pub fn without_bootstrap(mut self) -> Self {
        self.bootstrap = false;
        self
    }

    fn validate(&self, p: usize) -> Result<()> {
        if self.n_trees < 1 {
            return Err(Error::invalid("n_trees must be at least 1"));
        }
        if self.mtry < 1 || self.mtry > p {
            return Err(Error::invalid(format!(
                "mtry must lie in 1..={p}, got {}",
                self.mtry
            )));
        }
        if self.nodesize < 1 {
            return Err(Error::invalid("nodesize must be at least 1"));
        }
        Ok(())
    }
}

/// One node of a fitted tree. Leaves record the half-open range of their
/// training rows inside the owning tree's `rows` array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Internal {
        split_column: u32,
        split_threshold: f64,
        left: u32,
        right: u32,
    },
    Leaf {
        prediction: f64,
        rows_start: u32,
        rows_end: u32,
    },
}

/// A fitted regression tree: node arena (root at index 0) plus the training
/// row ids (with bootstrap multiplicity) grouped by leaf.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    nodes: Vec<TreeNode>,
    rows: Vec<u32>,
}

impl Tree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// Training row ids (bootstrap multiplicity included) of a leaf node.
    pub fn leaf_rows(&self, node: &TreeNode) -> Option<&[u32]> {
        match node {
            TreeNode::Leaf { rows_start, rows_end, .. } => {
                Some(&self.rows[*rows_start as usize..*rows_end as usize])
            }
            TreeNode::Internal { .. } => None,
        }
    }

    /// Index of the leaf a point falls into.
    fn leaf_index(&self, x: &[f64]) -> usize {
        let mut i = 0usize;
        loop {
            match &self.nodes[i] {
                TreeNode::Leaf { .. } => return i,
                TreeNode::Internal { split_column, split_threshold, left, right } => {
                    i = if x[*split_column as usize] <= *split_threshold {
                        *left as usize
                    } else {
                        *right as usize
                    };
                }
            }
        }
    }

    pub fn predict_point(&self, x: &[f64]) -> f64 {
        match &self.nodes[self.leaf_index(x)] {
            TreeNode::Leaf { prediction, .. } => *prediction,
            TreeNode::Internal { .. } => unreachable!(),
        }
    }
}

/// A bagged forest of regression trees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    trees: Vec<Tree>,
    params: ForestParams,
    feature_names: Vec<String>,
    n_train: usize,
    /// (min, max) of the training response; every prediction stays inside.
    training_response_range: (f64, f64),
}

impl Forest {
    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn params(&self) -> &ForestParams {
        &self.params
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn n_train(&self) -> usize {
        self.n_train
    }

    pub fn training_response_range(&self) -> (f64, f64) {
        self.training_response_range
    }

    pub fn predict(&self, points: &DataMatrix) -> Result<Vec<f64>> {
        predict_forest(self, points)
    }
}

/// Fit a single tree on all rows of `train` (no bootstrap), drawing `mtry`
/// candidate columns per node from `rng`.
pub fn fit_tree(
    train: &DataMatrix,
    mtry: usize,
    nodesize: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Tree> {
    let y = train.response_or_err()?;
    if train.n_rows() == 0 {
        return Err(Error::invalid("cannot fit a tree on zero rows"));
    }
    ForestParams { n_trees: 1, mtry, nodesize, seed: 0, bootstrap: false }
        .validate(train.n_cols())?;
    let presorted = presort_columns(train.columns());
    let counts = vec![1u32; train.n_rows()];
    Ok(build_tree(
        train.columns(),
        y,
        &presorted,
        &counts,
        train.n_rows(),
        mtry,
        nodesize,
        rng,
    ))
}

/// Fit a bagged forest. Each tree uses an independent ChaCha stream derived
/// from `(seed, tree index)`, so the result is identical for a fixed seed
/// regardless of how many threads run the fit.
pub fn fit_forest(train: &DataMatrix, params: &ForestParams) -> Result<Forest> {
    let y = train.response_or_err()?;
    if train.n_rows() == 0 {
        return Err(Error::invalid("cannot fit a forest on zero rows"));
    }
    params.validate(train.n_cols())?;

    let n = train.n_rows();
    let presorted = presort_columns(train.columns());
    let columns = train.columns();

    let trees: Vec<Tree> = (0..params.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(params.seed, t as u64);
            let counts = if params.bootstrap {
                let mut counts = vec![0u32; n];
                for _ in 0..n {
                    counts[rng.random_range(0..n)] += 1;
                }
                counts
            } else {
                vec![1u32; n]
            };
            build_tree(columns, y, &presorted, &counts, n, params.mtry, params.nodesize, &mut rng)
        })
        .collect();

    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in y {
        y_min = y_min.min(v);
        y_max = y_max.max(v);
    }

    Ok(Forest {
        trees,
        params: params.clone(),
        feature_names: train.names().to_vec(),
        n_train: n,
        training_response_range: (y_min, y_max),
    })
}

/// Mean of tree predictions at every row of `points`, clamped into the
/// training response range (the prediction is a convex combination of
/// training responses; clamping only removes last-ulp rounding).
pub fn predict_forest(forest: &Forest, points: &DataMatrix) -> Result<Vec<f64>> {
    points.check_columns(&forest.feature_names)?;
    let (lo, hi) = forest.training_response_range;
    let mut out = Vec::with_capacity(points.n_rows());
    let mut buf = vec![0.0; points.n_cols()];
    for i in 0..points.n_rows() {
        points.row_into(i, &mut buf);
        let sum: f64 = forest.trees.iter().map(|t| t.predict_point(&buf)).sum();
        out.push((sum / forest.trees.len() as f64).clamp(lo, hi));
    }
    Ok(out)
}

/// The convex-combination weights realizing the forest prediction at `point`:
/// w_i aggregates (1/n_trees) * multiplicity of row i in the leaf containing
/// the point / leaf bootstrap mass, over trees. Nonnegative, sums to 1.
pub fn extract_weights(forest: &Forest, point: &[f64]) -> Result<Vec<f64>> {
    if point.len() != forest.feature_names.len() {
        return Err(Error::DimensionMismatch {
            expected: forest.feature_names.len(),
            actual: point.len(),
        });
    }
    let mut weights = vec![0.0f64; forest.n_train];
    let per_tree = 1.0 / forest.trees.len() as f64;
    for tree in &forest.trees {
        let leaf = &tree.nodes[tree.leaf_index(point)];
        let rows = tree.leaf_rows(leaf).expect("leaf_index returns a leaf");
        let share = per_tree / rows.len() as f64;
        for &r in rows {
            weights[r as usize] += share;
        }
    }
    Ok(weights)
}

/// Row ids 0..n sorted by each column's value (ties by row id).
fn presort_columns(columns: &[Vec<f64>]) -> Vec<Vec<u32>> {
    columns
        .iter()
        .map(|col| {
            let mut idx: Vec<u32> = (0..col.len() as u32).collect();
            idx.sort_unstable_by(|&a, &b| {
                col[a as usize]
                    .partial_cmp(&col[b as usize])
                    .expect("finite values")
                    .then(a.cmp(&b))
            });
            idx
        })
        .collect()
}

/// Midpoint split threshold between two consecutive distinct values; falls
/// back to the lower value if rounding would reach the upper one, so the
/// `x <= threshold` predicate always separates the two.
fn split_threshold(lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    if mid >= hi {
        lo
    } else {
        mid
    }
}

struct PendingNode {
    start: usize,
    end: usize,
    /// (parent node index, is_right_child); None for the root.
    parent: Option<(usize, bool)>,
}

/// One bootstrap instance as seen through one column: the column value plus
/// the instance id (distinct per bootstrap copy).
#[derive(Clone, Copy)]
#[repr(C)]
struct ColEntry {
    x: f64,
    iid: u32,
}

#[allow(clippy::too_many_arguments)]
fn build_tree(
    columns: &[Vec<f64>],
    y: &[f64],
    presorted: &[Vec<u32>],
    counts: &[u32],
    n_instances_hint: usize,
    mtry: usize,
    nodesize: usize,
    rng: &mut ChaCha8Rng,
) -> Tree {
    let p = columns.len();
    let n_rows = y.len();

    // Bootstrap copies get consecutive instance ids in row order, so the same
    // instance carries the same id in every column's array.
    let n_instances: usize = counts.iter().map(|&c| c as usize).sum();
    debug_assert!(n_instances > 0 && n_instances_hint > 0);
    let mut first_iid = vec![0u32; n_rows];
    let mut iid_row = vec![0u32; n_instances];
    let mut ys = vec![0.0f64; n_instances];
    {
        let mut at = 0u32;
        for r in 0..n_rows {
            first_iid[r] = at;
            for _ in 0..counts[r] {
                iid_row[at as usize] = r as u32;
                ys[at as usize] = y[r];
                at += 1;
            }
        }
    }

    // Per-column entry arrays in presorted order; node ranges stay contiguous
    // in every array through the stable partitions below.
    let mut cols: Vec<Vec<ColEntry>> = Vec::with_capacity(p);
    for (c, order) in presorted.iter().enumerate() {
        let col = &columns[c];
        let mut v = Vec::with_capacity(n_instances);
        for &r in order {
            let r = r as usize;
            let x = col[r];
            for copy in 0..counts[r] {
                v.push(ColEntry { x, iid: first_iid[r] + copy });
            }
        }
        cols.push(v);
    }

    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut leaf_rows: Vec<u32> = Vec::with_capacity(n_instances);
    let mut right_buf: Vec<ColEntry> = vec![ColEntry { x: 0.0, iid: 0 }; n_instances];
    let mut goes_left: Vec<bool> = vec![false; n_instances];
    let mut col_pool: Vec<usize> = (0..p).collect();
    let mut candidates: Vec<usize> = Vec::with_capacity(mtry);

    let mut stack = vec![PendingNode { start: 0, end: n_instances, parent: None }];

    // The loops below run for every instance of every node of every tree and
    // dominate forest-fitting time: column values stream contiguously,
    // responses come from the small iid-indexed array, and indexing skips
    // bounds checks (every iid < n_instances by construction).
    while let Some(PendingNode { start, end, parent }) = stack.pop() {
        let k = end - start;
        let slice0 = &cols[0][start..end];
        let mut sum = 0.0f64;
        let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for e in slice0 {
            let v = unsafe { *ys.get_unchecked(e.iid as usize) };
            sum += v;
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }

        let mut best: Option<(usize, f64, usize)> = None; // (column, threshold, n_left)
        // split only if the node holds more rows than nodesize and the
        // response still varies
        if k > nodesize && y_min < y_max {
            // draw mtry candidate columns without replacement; evaluate in
            // ascending column order so ties resolve to the lowest column,
            // then the smallest threshold
            for i in 0..mtry {
                let j = rng.random_range(i..p);
                col_pool.swap(i, j);
            }
            candidates.clear();
            candidates.extend_from_slice(&col_pool[..mtry]);
            candidates.sort_unstable();

            // score with node-mean-centered responses: same argmax as the
            // summed child SSE, but invariant under a constant response
            // shift, which would otherwise swamp small score differences.
            // total and sum-of-squares are accumulated elementwise (not via
            // sum_sq - k*mean^2) so both are shift-invariant to ulp level:
            // the tie band below must not move when the response shifts.
            let node_mean = sum / k as f64;
            let mut total_centered = 0.0f64;
            let mut node_ss = 0.0f64;
            for e in slice0 {
                let u = unsafe { *ys.get_unchecked(e.iid as usize) } - node_mean;
                total_centered += u;
                node_ss += u * u;
            }
            // candidates within `eps` of the incumbent are treated as tied
            // and the earlier (lower column, smaller threshold) one kept;
            // exact mathematical ties across columns otherwise resolve by
            // summation-order noise
            let eps = 1e-12 * node_ss;
            let mut best_score = 0.0f64;
            for &c in &candidates {
                let slice = &cols[c][start..end];
                // a column constant within the node has no split position
                if slice[0].x == slice[k - 1].x {
                    continue;
                }
                let mut left_sum = 0.0f64;
                for i in 0..k - 1 {
                    unsafe {
                        let e = slice.get_unchecked(i);
                        left_sum += *ys.get_unchecked(e.iid as usize) - node_mean;
                        let x_next = slice.get_unchecked(i + 1).x;
                        if e.x < x_next {
                            let n_left = (i + 1) as f64;
                            let n_right = (k - i - 1) as f64;
                            let right_sum = total_centered - left_sum;
                            let score =
                                left_sum * left_sum / n_left + right_sum * right_sum / n_right;
                            if score > best_score + eps {
                                best_score = score;
                                best = Some((c, split_threshold(e.x, x_next), i + 1));
                            }
                        }
                    }
                }
            }
        }

        let node_idx = nodes.len();
        match best {
            None => {
                let rows_start = leaf_rows.len() as u32;
                leaf_rows.extend(
                    slice0
                        .iter()
                        .map(|e| unsafe { *iid_row.get_unchecked(e.iid as usize) }),
                );
                nodes.push(TreeNode::Leaf {
                    prediction: sum / k as f64,
                    rows_start,
                    rows_end: leaf_rows.len() as u32,
                });
            }
            Some((split_col, threshold, n_left)) => {
                // one contiguous pass over the split column decides each
                // instance's side; every column then stable-partitions its
                // range with left entries written in place (the write cursor
                // never passes the read cursor) and right entries staged in
                // the scratch buffer
                for e in &cols[split_col][start..end] {
                    unsafe {
                        *goes_left.get_unchecked_mut(e.iid as usize) = e.x <= threshold;
                    }
                }
                // the split column is sorted by x within the node, so it is
                // already partitioned at n_left and needs no pass
                for (c, arr) in cols.iter_mut().enumerate() {
                    if c == split_col {
                        debug_assert!(arr[start + n_left - 1].x <= threshold);
                        debug_assert!(arr[start + n_left].x > threshold);
                        continue;
                    }
                    // branchless: store to both destinations, advance one
                    // cursor; the side split is ~50/50 and unpredictable, so
                    // a branchy loop stalls on mispredictions
                    unsafe {
                        let mut w = start;
                        let mut nr = 0usize;
                        for i in start..end {
                            let e = *arr.get_unchecked(i);
                            let gl = *goes_left.get_unchecked(e.iid as usize);
                            *arr.get_unchecked_mut(w) = e;
                            *right_buf.get_unchecked_mut(nr) = e;
                            w += gl as usize;
                            nr += !gl as usize;
                        }
                        debug_assert_eq!(w - start, n_left);
                        arr.get_unchecked_mut(w..end)
                            .copy_from_slice(right_buf.get_unchecked(..nr));
                    }
                }
                nodes.push(TreeNode::Internal {
                    split_column: split_col as u32,
                    split_threshold: threshold,
                    left: 0,
                    right: 0,
                });
                // right pushed first so the left child is built next (LIFO)
                stack.push(PendingNode {
                    start: start + n_left,
                    end,
                    parent: Some((node_idx, true)),
                });
                stack.push(PendingNode {
                    start,
                    end: start + n_left,
                    parent: Some((node_idx, false)),
                });
            }
        }

        if let Some((parent_idx, is_right)) = parent {
            if let TreeNode::Internal { left, right, .. } = &mut nodes[parent_idx] {
                if is_right {
                    *right = node_idx as u32;
                } else {
                    *left = node_idx as u32;
                }
            }
        }
    }

    Tree { nodes, rows: leaf_rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn matrix(cols: Vec<(&str, Vec<f64>)>, y: Vec<f64>) -> DataMatrix {
        let names = cols.iter().map(|(n, _)| n.to_string()).collect();
        let columns = cols.into_iter().map(|(_, c)| c).collect();
        DataMatrix::new(names, columns)
            .unwrap()
            .with_response("y", y)
            .unwrap()
    }

    fn random_data(seed: u64, n: usize, p: usize) -> DataMatrix {
        let mut r = rng::stream_rng(seed, 7);
        let columns: Vec<Vec<f64>> = (0..p)
            .map(|_| (0..n).map(|_| rng::uniform(&mut r)).collect())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|i| {
                columns.iter().map(|c| c[i]).sum::<f64>() + 0.3 * rng::normal(&mut r)
            })
            .collect();
        let names = (0..p).map(|j| format!("x{}", j + 1)).collect();
        DataMatrix::new(names, columns)
            .unwrap()
            .with_response("y", y)
            .unwrap()
    }

    /// Exhaustive best root split: every column, every midpoint between
    /// consecutive distinct sorted values; minimizes summed child SSE with
    /// two-pass variance computation. Ties: lowest column, then smallest
    /// threshold.
    fn oracle_root_split(data: &DataMatrix) -> Option<(usize, f64)> {
        let y = data.response().unwrap();
        let n = data.n_rows();
        let sse = |rows: &[usize]| -> f64 {
            let mean = rows.iter().map(|&i| y[i]).sum::<f64>() / rows.len() as f64;
            rows.iter().map(|&i| (y[i] - mean).powi(2)).sum()
        };
        let all: Vec<usize> = (0..n).collect();
        let parent_sse = sse(&all);
        let mut best: Option<(f64, usize, f64)> = None;
        for c in 0..data.n_cols() {
            let col = data.column(c);
            let mut values: Vec<f64> = col.to_vec();
            values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            values.dedup();
            for w in values.windows(2) {
                let t = split_threshold(w[0], w[1]);
                let left: Vec<usize> = (0..n).filter(|&i| col[i] <= t).collect();
                let right: Vec<usize> = (0..n).filter(|&i| col[i] > t).collect();
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let total = sse(&left) + sse(&right);
                if total >= parent_sse {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((b, bc, bt)) => {
                        total < *b - 1e-12
                            || (total < *b + 1e-12 && (c, t) < (*bc, *bt))
                    }
                };
                if better {
                    best = Some((total, c, t));
                }
            }
        }
        best.map(|(_, c, t)| (c, t))
    }

    #[test]
    fn forced_two_leaf_tree() {
        let data = matrix(vec![("x", vec![0.0, 1.0])], vec![0.0, 10.0]);
        let mut r = rng::stream_rng(0, 0);
        let tree = fit_tree(&data, 1, 1, &mut r).unwrap();
        assert_eq!(tree.nodes().len(), 3);
        match &tree.nodes()[0] {
            TreeNode::Internal { split_column, split_threshold, left, right } => {
                assert_eq!(*split_column, 0);
                assert!((split_threshold - 0.5).abs() < 1e-12);
                let (l, r2) = (&tree.nodes()[*left as usize], &tree.nodes()[*right as usize]);
                match (l, r2) {
                    (
                        TreeNode::Leaf { prediction: pl, .. },
                        TreeNode::Leaf { prediction: pr, .. },
                    ) => {
                        assert_eq!(*pl, 0.0);
                        assert_eq!(*pr, 10.0);
                    }
                    _ => panic!("expected two leaves"),
                }
            }
            _ => panic!("expected root split"),
        }
    }

    #[test]
    fn constant_response_single_leaf() {
        let data = matrix(
            vec![("x", vec![1.0, 2.0, 3.0, 4.0])],
            vec![7.5, 7.5, 7.5, 7.5],
        );
        let mut r = rng::stream_rng(0, 0);
        let tree = fit_tree(&data, 1, 1, &mut r).unwrap();
        assert_eq!(tree.nodes().len(), 1);
        match &tree.nodes()[0] {
            TreeNode::Leaf { prediction, .. } => assert_eq!(*prediction, 7.5),
            _ => panic!("expected single leaf"),
        }
    }

    #[test]
    fn single_row_single_leaf() {
        let data = matrix(vec![("x", vec![3.0])], vec![1.5]);
        let mut r = rng::stream_rng(1, 0);
        let tree = fit_tree(&data, 1, 1, &mut r).unwrap();
        assert_eq!(tree.nodes().len(), 1);
        assert_eq!(tree.predict_point(&[100.0]), 1.5);
    }

    #[test]
    fn root_split_matches_exhaustive_oracle() {
        for seed in 0..50u64 {
            let n = 5 + (seed as usize * 7) % 26;
            let p = 1 + (seed as usize) % 3;
            let data = random_data(seed, n, p);
            let mut r = rng::stream_rng(seed, 1);
            let tree = fit_tree(&data, p, 1, &mut r).unwrap();
            match (&tree.nodes()[0], oracle_root_split(&data)) {
                (
                    TreeNode::Internal { split_column, split_threshold, .. },
                    Some((oc, ot)),
                ) => {
                    assert_eq!(*split_column as usize, oc, "seed {seed}");
                    assert_eq!(*split_threshold, ot, "seed {seed}");
                }
                (TreeNode::Leaf { .. }, None) => {}
                (node, oracle) => {
                    panic!("seed {seed}: impl {node:?} vs oracle {oracle:?}")
                }
            }
        }
    }

    #[test]
    fn leaf_predictions_are_leaf_means() {
        let data = random_data(11, 80, 3);
        let y = data.response().unwrap();
        let params = ForestParams::new(2, 5, 42).with_n_trees(10);
        let forest = fit_forest(&data, &params).unwrap();
        for tree in forest.trees() {
            for node in tree.nodes() {
                if let TreeNode::Leaf { prediction, .. } = node {
                    let rows = tree.leaf_rows(node).unwrap();
                    let mean =
                        rows.iter().map(|&r| y[r as usize]).sum::<f64>() / rows.len() as f64;
                    assert!((prediction - mean).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn internal_children_partition_parent_rows() {
        let data = random_data(13, 60, 3);
        let params = ForestParams::new(3, 1, 5).with_n_trees(5);
        let forest = fit_forest(&data, &params).unwrap();
        for tree in forest.trees() {
            // collect leaf sizes; they must sum to the bootstrap sample size
            let total: usize = tree
                .nodes()
                .iter()
                .filter_map(|n| tree.leaf_rows(n).map(|r| r.len()))
                .sum();
            assert_eq!(total, 60);
        }
    }

    #[test]
    fn forest_determinism_across_thread_counts() {
        let data = random_data(3, 100, 4);
        let params = ForestParams::new(2, 5, 123).with_n_trees(16);
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let f1 = pool1.install(|| fit_forest(&data, &params)).unwrap();
        let f4 = pool4.install(|| fit_forest(&data, &params)).unwrap();
        assert_eq!(f1, f4);
    }

    #[test]
    fn single_tree_without_bootstrap_interpolates_training_points() {
        let data = random_data(9, 40, 2);
        let params = ForestParams::new(2, 1, 77).with_n_trees(1).without_bootstrap();
        let forest = fit_forest(&data, &params).unwrap();
        let preds = forest.predict(&data).unwrap();
        let y = data.response().unwrap();
        for (p, yi) in preds.iter().zip(y) {
            assert!((p - yi).abs() < 1e-12);
        }

        // and it equals the bare tree fit with the same stream
        let mut r = stream_rng(77, 0);
        let tree = fit_tree(&data, 2, 1, &mut r).unwrap();
        assert_eq!(forest.trees()[0], tree);
    }

    #[test]
    fn constant_response_forest_predicts_it_exactly() {
        let data = matrix(
            vec![("x", (0..30).map(|i| i as f64).collect())],
            vec![4.0; 30],
        );
        let params = ForestParams::new(1, 5, 2).with_n_trees(20);
        let forest = fit_forest(&data, &params).unwrap();
        let q = DataMatrix::new(vec!["x".into()], vec![vec![-5.0, 15.0, 100.0]]).unwrap();
        for p in forest.predict(&q).unwrap() {
            assert_eq!(p, 4.0);
        }
    }

    #[test]
    fn predictions_respect_training_range() {
        for seed in 0..20u64 {
            let data = random_data(seed, 50, 3);
            let params = ForestParams::new(2, 1, seed).with_n_trees(10);
            let forest = fit_forest(&data, &params).unwrap();
            let (lo, hi) = forest.training_response_range();
            let mut r = rng::stream_rng(seed, 99);
            let qcols: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..100).map(|_| rng::uniform(&mut r) * 4.0 - 2.0).collect())
                .collect();
            let q = DataMatrix::new(
                (1..=3).map(|j| format!("x{j}")).collect(),
                qcols,
            )
            .unwrap();
            for p in forest.predict(&q).unwrap() {
                assert!(p >= lo && p <= hi);
            }
        }
    }

    #[test]
    fn weights_reproduce_predictions() {
        let data = random_data(31, 60, 3);
        let y = data.response().unwrap();
        let params = ForestParams::new(2, 3, 8).with_n_trees(25);
        let forest = fit_forest(&data, &params).unwrap();
        let mut r = rng::stream_rng(31, 5);
        for _ in 0..50 {
            let point: Vec<f64> = (0..3).map(|_| rng::uniform(&mut r) * 2.0 - 0.5).collect();
            let w = extract_weights(&forest, &point).unwrap();
            assert!(w.iter().all(|&v| (0.0..=1.0).contains(&v)));
            let total: f64 = w.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "weights sum to {total}");
            let dot: f64 = w.iter().zip(y).map(|(wi, yi)| wi * yi).sum();
            let q = DataMatrix::new(
                (1..=3).map(|j| format!("x{j}")).collect(),
                point.iter().map(|&v| vec![v]).collect(),
            )
            .unwrap();
            let pred = forest.predict(&q).unwrap()[0];
            assert!((dot - pred).abs() < 1e-10, "dot {dot} vs pred {pred}");
        }
    }

    #[test]
    fn uniform_weights_for_single_leaf_tree() {
        let n = 12;
        let data = matrix(
            vec![("x", (0..n).map(|i| i as f64).collect())],
            vec![3.0; n],
        );
        let params = ForestParams::new(1, 5, 4).with_n_trees(1).without_bootstrap();
        let forest = fit_forest(&data, &params).unwrap();
        let w = extract_weights(&forest, &[2.5]).unwrap();
        for wi in w {
            assert!((wi - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn shift_equivariance() {
        let data = random_data(17, 70, 3);
        let y = data.response().unwrap().to_vec();
        let shifted = data
            .replace_response("y", y.iter().map(|v| v + 11.25).collect())
            .unwrap();
        let params = ForestParams::new(2, 5, 55).with_n_trees(15);
        let f0 = fit_forest(&data, &params).unwrap();
        let f1 = fit_forest(&shifted, &params).unwrap();
        let q = random_data(18, 30, 3);
        let q = q.drop_columns(&[]).unwrap();
        let p0 = f0.predict(&q).unwrap();
        let p1 = f1.predict(&q).unwrap();
        for (a, b) in p0.iter().zip(&p1) {
            assert!((b - a - 11.25).abs() < 1e-10);
        }
    }

    #[test]
    fn column_and_dimension_mismatches() {
        let data = random_data(1, 30, 2);
        let params = ForestParams::new(1, 5, 0).with_n_trees(3);
        let forest = fit_forest(&data, &params).unwrap();
        let bad = DataMatrix::new(vec!["a".into()], vec![vec![1.0]]).unwrap();
        assert!(matches!(
            forest.predict(&bad),
            Err(Error::ColumnMismatch { .. })
        ));
        assert!(matches!(
            extract_weights(&forest, &[1.0, 2.0, 3.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invalid_params_rejected() {
        let data = random_data(1, 30, 2);
        assert!(fit_forest(&data, &ForestParams::new(0, 5, 0)).is_err());
        assert!(fit_forest(&data, &ForestParams::new(3, 5, 0)).is_err());
        assert!(fit_forest(&data, &ForestParams::new(1, 0, 0)).is_err());
        assert!(fit_forest(&data, &ForestParams::new(1, 1, 0).with_n_trees(0)).is_err());
    }
}
