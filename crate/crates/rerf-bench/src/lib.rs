//! Shared helpers for the criterion benches.

use rerf_core::{generate, DataMatrix, Model, Sampling, ScenarioSpec};

/// A training set drawn from the non-additive extrapolation scenario.
pub fn bench_data(n: usize, seed: u64) -> DataMatrix {
    let spec = ScenarioSpec {
        n_train: n,
        ..ScenarioSpec::new(Model::N, Sampling::E, seed)
    };
    generate(&spec).expect("valid scenario").0
}
