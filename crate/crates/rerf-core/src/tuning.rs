//! Cross-validated selection of (lambda, mtry, nodesize).
//!
//! The penalty is always scored through the full pipeline — Lasso, then a
//! forest on the Lasso residuals — never by Lasso cross-validation alone.
//! Fold assignment is shared across all grid cells within one search, and
//! each (cell, fold) forest draws its seed from (search seed, cell index,
//! fold index), so results are independent of scheduling.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{expand_features, DataMatrix, FeatureExpansionSpec};
use crate::error::{Error, Result};
use crate::forest::{fit_forest, predict_forest, ForestParams};
use crate::lasso::{fit_lasso_path, predict_linear, residuals, LassoFit, PenaltyGrid};
use crate::metrics::rmse;
use crate::rerf::SelectedParams;
use crate::rng::derive_seed;

/// Candidate values for the three tuning parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningGrid {
    pub lambdas: PenaltyGrid,
    pub mtry_candidates: Vec<usize>,
    pub nodesize_candidates: Vec<usize>,
}

impl TuningGrid {
    pub fn n_cells(&self) -> usize {
        self.lambdas.len() * self.mtry_candidates.len() * self.nodesize_candidates.len()
    }

    fn validate(&self, p: usize) -> Result<()> {
        if self.mtry_candidates.is_empty() || self.nodesize_candidates.is_empty() {
            return Err(Error::invalid("tuning grid has an empty candidate list"));
        }
        for &m in &self.mtry_candidates {
            if m < 1 || m > p {
                return Err(Error::invalid(format!(
                    "mtry candidate {m} invalid for {p} predictors"
                )));
            }
        }
        if self.nodesize_candidates.iter().any(|&s| s < 1) {
            return Err(Error::invalid("nodesize candidates must be at least 1"));
        }
        Ok(())
    }
}

/// Default grid for `p` predictors: the full penalty grid, mtry at half,
/// once and twice max(1, floor(p/3)) (deduplicated, capped at p), and
/// nodesize in {1, 5}.
pub fn default_grid(p: usize) -> TuningGrid {
    let d = (p / 3).max(1);
    let mut mtry = vec![(d / 2).max(1), d, (2 * d).min(p)];
    mtry.sort_unstable();
    mtry.dedup();
    TuningGrid {
        lambdas: crate::lasso::default_penalty_grid(),
        mtry_candidates: mtry,
        nodesize_candidates: vec![1, 5],
    }
}

/// Search configuration. `cv_n_trees` keeps cross-validation forests small;
/// the final model is refit separately at full size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub k: usize,
    pub seed: u64,
    pub cv_n_trees: usize,
    pub forest_on_expanded: bool,
    pub bootstrap: bool,
}

impl SearchSettings {
    pub fn new(seed: u64) -> Self {
        SearchSettings {
            k: 5,
            seed,
            cv_n_trees: 100,
            forest_on_expanded: false,
            bootstrap: true,
        }
    }
}

/// Mean CV RMSE for one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvCell {
    pub lambda: f64,
    pub mtry: usize,
    pub nodesize: usize,
    pub fold_rmses: Vec<f64>,
    pub mean_rmse: f64,
}

/// A fold evaluation that failed; its cell is excluded from selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub lambda: f64,
    pub mtry: usize,
    pub nodesize: usize,
    pub fold: usize,
    pub message: String,
}

/// Outcome of a search: the selected triple plus the audited CV table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningResult {
    pub selected: SelectedParams,
    pub cv_table: Vec<CvCell>,
    pub fold_count: usize,
    pub seed: u64,
    /// Grid cells evaluated (each stage counted, including repeats).
    pub n_evaluations: usize,
    pub failures: Vec<CellFailure>,
}

impl TuningResult {
    /// Minimum mean CV RMSE attained (the selected cell's score).
    pub fn best_cv_rmse(&self) -> f64 {
        self.cv_table
            .iter()
            .filter(|c| {
                c.lambda == self.selected.lambda
                    && c.mtry == self.selected.mtry
                    && c.nodesize == self.selected.nodesize
            })
            .map(|c| c.mean_rmse)
            .fold(f64::INFINITY, f64::min)
    }
}

/// k disjoint validation index sets covering 0..n, sizes differing by at
/// most one, deterministic under the seed.
pub fn kfold_indices(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::invalid("k-fold requires k >= 2"));
    }
    if k > n {
        return Err(Error::invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut rng = crate::rng::stream_rng(seed, 0);
    use rand::seq::SliceRandom;
    idx.shuffle(&mut rng);

    let base = n / k;
    let extra = n % k;
    let mut folds = Vec::with_capacity(k);
    let mut at = 0;
    for f in 0..k {
        let size = base + usize::from(f < extra);
        let mut fold: Vec<usize> = idx[at..at + size].to_vec();
        fold.sort_unstable();
        folds.push(fold);
        at += size;
    }
    Ok(folds)
}

/// Per-fold context shared by every cell: fold matrices, the Lasso path, and
/// the per-penalty residual and validation linear parts.
struct FoldContext {
    raw_train: DataMatrix,
    raw_val: DataMatrix,
    exp_train: DataMatrix,
    exp_val: DataMatrix,
    residuals_by_lambda: Vec<Vec<f64>>,
    linear_val_by_lambda: Vec<Vec<f64>>,
}

fn build_fold_contexts(
    train: &DataMatrix,
    expansion: &FeatureExpansionSpec,
    lambdas: &PenaltyGrid,
    k: usize,
    seed: u64,
) -> Result<Vec<FoldContext>> {
    let n = train.n_rows();
    let expanded_full = expand_features(train, expansion)?;
    let folds = kfold_indices(n, k, seed)?;

    folds
        .iter()
        .map(|val_idx| {
            let mut in_val = vec![false; n];
            for &i in val_idx {
                in_val[i] = true;
            }
            let train_idx: Vec<usize> = (0..n).filter(|&i| !in_val[i]).collect();

            let raw_train = train.select_rows(&train_idx);
            let raw_val = train.select_rows(val_idx);
            let exp_train = expanded_full.select_rows(&train_idx);
            let exp_val = expanded_full.select_rows(val_idx);

            let fits: Vec<LassoFit> = fit_lasso_path(&exp_train, lambdas)?;
            let mut residuals_by_lambda = Vec::with_capacity(fits.len());
            let mut linear_val_by_lambda = Vec::with_capacity(fits.len());
            for fit in &fits {
                residuals_by_lambda.push(residuals(fit, &exp_train)?);
                linear_val_by_lambda.push(predict_linear(fit, &exp_val)?);
            }
            Ok(FoldContext {
                raw_train,
                raw_val,
                exp_train,
                exp_val,
                residuals_by_lambda,
                linear_val_by_lambda,
            })
        })
        .collect()
}

/// Evaluate the listed cells ((lambda, mtry, nodesize) index triples) on all
/// folds. Returns valid cells in list order plus failures.
fn evaluate_cells(
    folds: &[FoldContext],
    grid: &TuningGrid,
    cells: &[(usize, usize, usize)],
    settings: &SearchSettings,
) -> (Vec<CvCell>, Vec<CellFailure>) {
    let n_m = grid.mtry_candidates.len();
    let n_s = grid.nodesize_candidates.len();
    let k = folds.len();

    let items: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..k).map(move |f| (c, f)))
        .collect();

    let outcomes: Vec<std::result::Result<f64, String>> = items
        .par_iter()
        .map(|&(c, f)| {
            let (li, mi, si) = cells[c];
            let ctx = &folds[f];
            let mtry = grid.mtry_candidates[mi];
            let nodesize = grid.nodesize_candidates[si];
            let cell_index = ((li * n_m + mi) * n_s + si) as u64;
            let seed = derive_seed(settings.seed, cell_index, f as u64);

            let run = || -> Result<f64> {
                let base = if settings.forest_on_expanded {
                    &ctx.exp_train
                } else {
                    &ctx.raw_train
                };
                let forest_train =
                    base.replace_response("residual", ctx.residuals_by_lambda[li].clone())?;
                let params = ForestParams {
                    n_trees: settings.cv_n_trees,
                    mtry,
                    nodesize,
                    seed,
                    bootstrap: settings.bootstrap,
                };
                let forest = fit_forest(&forest_train, &params)?;
                let forest_input = if settings.forest_on_expanded {
                    &ctx.exp_val
                } else {
                    &ctx.raw_val
                };
                let forest_pred = predict_forest(&forest, forest_input)?;
                let pred: Vec<f64> = ctx.linear_val_by_lambda[li]
                    .iter()
                    .zip(forest_pred)
                    .map(|(l, t)| l + t)
                    .collect();
                rmse(&pred, ctx.raw_val.response_or_err()?)
            };
            run().map_err(|e| e.to_string())
        })
        .collect();

    let mut table = Vec::with_capacity(cells.len());
    let mut failures = Vec::new();
    for (c, &(li, mi, si)) in cells.iter().enumerate() {
        let lambda = grid.lambdas.values()[li];
        let mtry = grid.mtry_candidates[mi];
        let nodesize = grid.nodesize_candidates[si];
        let mut fold_rmses = Vec::with_capacity(k);
        let mut failed = false;
        for f in 0..k {
            match &outcomes[c * k + f] {
                Ok(v) => fold_rmses.push(*v),
                Err(message) => {
                    failed = true;
                    failures.push(CellFailure {
                        lambda,
                        mtry,
                        nodesize,
                        fold: f,
                        message: message.clone(),
                    });
                }
            }
        }
        if !failed {
            let mean_rmse = fold_rmses.iter().sum::<f64>() / k as f64;
            table.push(CvCell { lambda, mtry, nodesize, fold_rmses, mean_rmse });
        }
    }
    (table, failures)
}

/// First index (in listed order) attaining the minimum mean RMSE: ties go to
/// the cell earliest in grid order.
fn select_best(table: &[CvCell]) -> Result<usize> {
    let mut best: Option<usize> = None;
    for (i, cell) in table.iter().enumerate() {
        if best.is_none_or(|b| cell.mean_rmse < table[b].mean_rmse) {
            best = Some(i);
        }
    }
    best.ok_or_else(|| Error::invalid("every grid cell failed cross-validation"))
}

fn check_search_inputs(
    train: &DataMatrix,
    grid: &TuningGrid,
    settings: &SearchSettings,
    expansion: &FeatureExpansionSpec,
) -> Result<usize> {
    train.response_or_err()?;
    if train.n_rows() < 2 * settings.k {
        return Err(Error::invalid(format!(
            "grid search requires n >= 2k, got n = {}, k = {}",
            train.n_rows(),
            settings.k
        )));
    }
    let forest_p = if settings.forest_on_expanded {
        train.n_cols() + expansion.generated_names().len()
    } else {
        train.n_cols()
    };
    grid.validate(forest_p)?;
    Ok(forest_p)
}

/// Exhaustive search over every (lambda, mtry, nodesize) cell.
pub fn grid_search(
    train: &DataMatrix,
    expansion: &FeatureExpansionSpec,
    grid: &TuningGrid,
    settings: &SearchSettings,
) -> Result<TuningResult> {
    check_search_inputs(train, grid, settings, expansion)?;
    let folds = build_fold_contexts(train, expansion, &grid.lambdas, settings.k, settings.seed)?;

    let mut cells = Vec::with_capacity(grid.n_cells());
    for li in 0..grid.lambdas.len() {
        for mi in 0..grid.mtry_candidates.len() {
            for si in 0..grid.nodesize_candidates.len() {
                cells.push((li, mi, si));
            }
        }
    }
    let (cv_table, failures) = evaluate_cells(&folds, grid, &cells, settings);
    let best = select_best(&cv_table)?;
    let sel = &cv_table[best];
    Ok(TuningResult {
        selected: SelectedParams {
            lambda: sel.lambda,
            mtry: sel.mtry,
            nodesize: sel.nodesize,
        },
        cv_table,
        fold_count: settings.k,
        seed: settings.seed,
        n_evaluations: cells.len(),
        failures,
    })
}

/// Three-stage approximation of the exhaustive search: sweep lambda at the
/// default (mtry, nodesize), sweep (mtry, nodesize) at that lambda, then
/// re-sweep lambda at the chosen pair. Far fewer evaluations; the result is
/// always a grid cell.
pub fn approximate_search(
    train: &DataMatrix,
    expansion: &FeatureExpansionSpec,
    grid: &TuningGrid,
    settings: &SearchSettings,
) -> Result<TuningResult> {
    let forest_p = check_search_inputs(train, grid, settings, expansion)?;
    let folds = build_fold_contexts(train, expansion, &grid.lambdas, settings.k, settings.seed)?;

    // stage defaults: the candidates closest to max(1, floor(p/3)) and 5
    let d = (forest_p / 3).max(1);
    let mi_default = closest_index(&grid.mtry_candidates, d);
    let si_default = closest_index(&grid.nodesize_candidates, 5);

    let mut cv_table = Vec::new();
    let mut failures = Vec::new();
    let mut n_evaluations = 0usize;

    // stage 1: lambda sweep at the defaults
    let stage1: Vec<(usize, usize, usize)> = (0..grid.lambdas.len())
        .map(|li| (li, mi_default, si_default))
        .collect();
    let (t1, f1) = evaluate_cells(&folds, grid, &stage1, settings);
    n_evaluations += stage1.len();
    let best1 = select_best(&t1)?;
    let li1 = grid
        .lambdas
        .values()
        .iter()
        .position(|&v| v == t1[best1].lambda)
        .expect("selected lambda is a grid value");
    cv_table.extend(t1);
    failures.extend(f1);

    // stage 2: (mtry, nodesize) sweep at the stage-1 lambda
    let mut stage2 = Vec::new();
    for mi in 0..grid.mtry_candidates.len() {
        for si in 0..grid.nodesize_candidates.len() {
            stage2.push((li1, mi, si));
        }
    }
    let (t2, f2) = evaluate_cells(&folds, grid, &stage2, settings);
    n_evaluations += stage2.len();
    let best2 = select_best(&t2)?;
    let (mi2, si2) = {
        let c = &t2[best2];
        (
            grid.mtry_candidates.iter().position(|&m| m == c.mtry).unwrap(),
            grid.nodesize_candidates.iter().position(|&s| s == c.nodesize).unwrap(),
        )
    };
    cv_table.extend(t2);
    failures.extend(f2);

    // stage 3: update lambda at the selected (mtry, nodesize)
    let stage3: Vec<(usize, usize, usize)> = (0..grid.lambdas.len())
        .map(|li| (li, mi2, si2))
        .collect();
    let (t3, f3) = evaluate_cells(&folds, grid, &stage3, settings);
    n_evaluations += stage3.len();
    let best3 = select_best(&t3)?;
    let selected = SelectedParams {
        lambda: t3[best3].lambda,
        mtry: t3[best3].mtry,
        nodesize: t3[best3].nodesize,
    };
    cv_table.extend(t3);
    failures.extend(f3);

    Ok(TuningResult {
        selected,
        cv_table,
        fold_count: settings.k,
        seed: settings.seed,
        n_evaluations,
        failures,
    })
}

fn closest_index(candidates: &[usize], target: usize) -> usize {
    let mut best = 0;
    for (i, &c) in candidates.iter().enumerate() {
        let d = c.abs_diff(target);
        let bd = candidates[best].abs_diff(target);
        if d < bd || (d == bd && c < candidates[best]) {
            best = i;
        }
    }
    best
}

/// Mean CV RMSE per penalty for a plain Lasso (used to tune the Lasso
/// comparison method on its own).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LassoCvResult {
    pub lambda: f64,
    /// (lambda, mean CV RMSE) per grid value.
    pub table: Vec<(f64, f64)>,
}

pub fn tune_lasso_cv(
    train: &DataMatrix,
    lambdas: &PenaltyGrid,
    k: usize,
    seed: u64,
) -> Result<LassoCvResult> {
    train.response_or_err()?;
    if train.n_rows() < 2 * k {
        return Err(Error::invalid("lasso cv requires n >= 2k"));
    }
    let folds = kfold_indices(train.n_rows(), k, seed)?;
    let n = train.n_rows();

    let mut sums = vec![0.0f64; lambdas.len()];
    for val_idx in &folds {
        let mut in_val = vec![false; n];
        for &i in val_idx {
            in_val[i] = true;
        }
        let train_idx: Vec<usize> = (0..n).filter(|&i| !in_val[i]).collect();
        let fold_train = train.select_rows(&train_idx);
        let fold_val = train.select_rows(val_idx);
        let fits = fit_lasso_path(&fold_train, lambdas)?;
        let y_val = fold_val.response_or_err()?;
        for (li, fit) in fits.iter().enumerate() {
            let pred = predict_linear(fit, &fold_val)?;
            sums[li] += rmse(&pred, y_val)?;
        }
    }

    let table: Vec<(f64, f64)> = lambdas
        .values()
        .iter()
        .zip(&sums)
        .map(|(&l, &s)| (l, s / k as f64))
        .collect();
    let mut best = 0usize;
    for (i, &(_, r)) in table.iter().enumerate() {
        if r < table[best].1 {
            best = i;
        }
    }
    Ok(LassoCvResult { lambda: table[best].0, table })
}

/// Mean CV RMSE per (mtry, nodesize) for a plain forest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestCvResult {
    pub mtry: usize,
    pub nodesize: usize,
    /// (mtry, nodesize, mean CV RMSE) per cell in grid order.
    pub table: Vec<(usize, usize, f64)>,
}

pub fn tune_forest_cv(
    train: &DataMatrix,
    mtry_candidates: &[usize],
    nodesize_candidates: &[usize],
    settings: &SearchSettings,
) -> Result<ForestCvResult> {
    train.response_or_err()?;
    if train.n_rows() < 2 * settings.k {
        return Err(Error::invalid("forest cv requires n >= 2k"));
    }
    if mtry_candidates.is_empty() || nodesize_candidates.is_empty() {
        return Err(Error::invalid("forest cv requires candidates"));
    }
    let n = train.n_rows();
    let folds = kfold_indices(n, settings.k, settings.seed)?;
    let fold_data: Vec<(DataMatrix, DataMatrix)> = folds
        .iter()
        .map(|val_idx| {
            let mut in_val = vec![false; n];
            for &i in val_idx {
                in_val[i] = true;
            }
            let train_idx: Vec<usize> = (0..n).filter(|&i| !in_val[i]).collect();
            (train.select_rows(&train_idx), train.select_rows(val_idx))
        })
        .collect();

    let n_s = nodesize_candidates.len();
    let cells: Vec<(usize, usize)> = mtry_candidates
        .iter()
        .enumerate()
        .flat_map(|(mi, _)| (0..n_s).map(move |si| (mi, si)))
        .collect();

    let items: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..settings.k).map(move |f| (c, f)))
        .collect();
    let scores: Vec<Result<f64>> = items
        .par_iter()
        .map(|&(c, f)| {
            let (mi, si) = cells[c];
            let (fold_train, fold_val) = &fold_data[f];
            let params = ForestParams {
                n_trees: settings.cv_n_trees,
                mtry: mtry_candidates[mi],
                nodesize: nodesize_candidates[si],
                seed: derive_seed(settings.seed, (mi * n_s + si) as u64, f as u64),
                bootstrap: settings.bootstrap,
            };
            let forest = fit_forest(fold_train, &params)?;
            let pred = predict_forest(&forest, fold_val)?;
            rmse(&pred, fold_val.response_or_err()?)
        })
        .collect();

    let mut table = Vec::with_capacity(cells.len());
    for (c, &(mi, si)) in cells.iter().enumerate() {
        let mut sum = 0.0;
        for f in 0..settings.k {
            match &scores[c * settings.k + f] {
                Ok(v) => sum += v,
                Err(e) => return Err(Error::invalid(format!("forest cv failed: {e}"))),
            }
        }
        table.push((
            mtry_candidates[mi],
            nodesize_candidates[si],
            sum / settings.k as f64,
        ));
    }
    let mut best = 0usize;
    for (i, &(_, _, r)) in table.iter().enumerate() {
        if r < table[best].2 {
            best = i;
        }
    }
    Ok(ForestCvResult {
        mtry: table[best].0,
        nodesize: table[best].1,
        table,
    })
}

/// Export a CV table as CSV with one row per (cell, fold).
pub fn write_cv_table(result: &TuningResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Csv {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    w.write_record(["lambda", "mtry", "nodesize", "fold", "rmse"])
        .map_err(|e| Error::Csv {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    for cell in &result.cv_table {
        for (fold, r) in cell.fold_rmses.iter().enumerate() {
            w.write_record([
                format!("{}", cell.lambda),
                format!("{}", cell.mtry),
                format!("{}", cell.nodesize),
                format!("{fold}"),
                format!("{r}"),
            ])
            .map_err(|e| Error::Csv {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}
