//! Property tests for the structural invariants: splits partition exactly,
//! expansion is deterministic, k-fold indices partition, and forest weights
//! form a convex combination reproducing the prediction.

use proptest::prelude::*;

use rerf_core::dataset::{expand_features, split, DataMatrix, FeatureExpansionSpec, SplitRule};
use rerf_core::tuning::kfold_indices;
use rerf_core::{extract_weights, fit_forest, ForestParams};

fn data_strategy() -> impl Strategy<Value = DataMatrix> {
    (2usize..40, 1usize..4).prop_flat_map(|(n, p)| {
        let cols = proptest::collection::vec(
            proptest::collection::vec(-10.0f64..10.0, n..=n),
            p..=p,
        );
        let response = proptest::collection::vec(-10.0f64..10.0, n..=n);
        (cols, response).prop_map(move |(cols, response)| {
            let names = (1..=p).map(|j| format!("x{j}")).collect();
            DataMatrix::new(names, cols)
                .unwrap()
                .with_response("y", response)
                .unwrap()
        })
    })
}

fn rule_strategy() -> impl Strategy<Value = SplitRule> {
    prop_oneof![
        (0.05f64..0.95, any::<u64>())
            .prop_map(|(f, seed)| SplitRule::RandomFraction { train_fraction: f, seed }),
        (-9.0f64..9.0, any::<bool>())
            .prop_map(|(t, above)| SplitRule::ResponseThreshold { threshold: t, train_above: above }),
        (-9.0f64..0.0, 0.5f64..9.0)
            .prop_map(|(lo, hi)| SplitRule::ResponseBandComplement { low: lo, high: hi }),
        (-9.0f64..9.0, any::<bool>()).prop_map(|(t, above)| SplitRule::FeatureThreshold {
            column: "x1".into(),
            threshold: t,
            train_above: above
        }),
        (-9.0f64..0.0, 0.5f64..9.0).prop_map(|(lo, hi)| SplitRule::FeatureBandComplement {
            column: "x1".into(),
            low: lo,
            high: hi
        }),
    ]
}

/// Sorted multiset of full rows (predictors + response) for partition checks.
fn row_multiset(data: &DataMatrix) -> Vec<Vec<u64>> {
    let y = data.response().unwrap();
    let mut rows: Vec<Vec<u64>> = (0..data.n_rows())
        .map(|i| {
            let mut row: Vec<u64> = data.columns().iter().map(|c| c[i].to_bits()).collect();
            row.push(y[i].to_bits());
            row
        })
        .collect();
    rows.sort();
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_is_an_exact_partition(data in data_strategy(), rule in rule_strategy()) {
        match split(&data, &rule) {
            Ok((train, val)) => {
                prop_assert!(train.n_rows() > 0 && val.n_rows() > 0);
                prop_assert_eq!(train.n_rows() + val.n_rows(), data.n_rows());
                let mut combined = row_multiset(&train);
                combined.extend(row_multiset(&val));
                combined.sort();
                prop_assert_eq!(combined, row_multiset(&data));
            }
            // a one-sided rule may legitimately empty a partition
            Err(rerf_core::Error::EmptyPartition { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
        }
    }

    #[test]
    fn expansion_is_deterministic_and_identity_when_empty(data in data_strategy()) {
        let identity = expand_features(&data, &FeatureExpansionSpec::default()).unwrap();
        prop_assert_eq!(&identity, &data);

        let spec = FeatureExpansionSpec {
            quadratics: vec!["x1".into()],
            interactions: vec![("x1".into(), "x1".into())],
            ..Default::default()
        };
        let once = expand_features(&data, &spec).unwrap();
        let again = expand_features(&data, &spec).unwrap();
        prop_assert_eq!(&once, &again);
        prop_assert_eq!(once.n_cols(), data.n_cols() + 2);
        prop_assert_eq!(&once.names()[..data.n_cols()], data.names());
    }

    #[test]
    fn kfold_indices_partition(n in 4usize..80, k_raw in 2usize..10, seed in any::<u64>()) {
        let k = k_raw.min(n);
        let folds = kfold_indices(n, k, seed).unwrap();
        prop_assert_eq!(folds.len(), k);
        let sizes: Vec<usize> = folds.iter().map(|f| f.len()).collect();
        let (min, max) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
        prop_assert!(max - min <= 1);
        let mut all: Vec<usize> = folds.into_iter().flatten().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn forest_weights_are_convex_and_reproduce_predictions(
        data in data_strategy(),
        seed in any::<u64>(),
        point in proptest::collection::vec(-12.0f64..12.0, 3),
    ) {
        let p = data.n_cols();
        let params = ForestParams::new(1.max(p / 2), 2, seed).with_n_trees(8);
        let forest = fit_forest(&data, &params).unwrap();
        let point = &point[..p];
        let w = extract_weights(&forest, point).unwrap();
        prop_assert!(w.iter().all(|&v| (0.0..=1.0).contains(&v)));
        let total: f64 = w.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);

        let y = data.response().unwrap();
        let dot: f64 = w.iter().zip(y).map(|(wi, yi)| wi * yi).sum();
        let query = DataMatrix::new(
            data.names().to_vec(),
            point.iter().map(|&v| vec![v]).collect(),
        )
        .unwrap();
        let pred = forest.predict(&query).unwrap()[0];
        prop_assert!((dot - pred).abs() < 1e-10, "dot {} vs pred {}", dot, pred);
        let (lo, hi) = forest.training_response_range();
        prop_assert!(pred >= lo && pred <= hi);
    }
}
