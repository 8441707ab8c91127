//! Regression-enhanced random forests (RERF).
//!
//! A RERF runs the Lasso on an (optionally expanded) design matrix, fits a
//! random forest to the Lasso residuals, and predicts as the sum of the two
//! parts. The linear part carries global trends and extrapolates beyond the
//! training domain; the forest part captures what the linear model misses.
//! With the penalty large enough that the Lasso is the intercept-only model,
//! a RERF is exactly a plain random forest.
//!
//! Modules:
//! - [`dataset`]: CSV loading, feature expansion, standardization, splits.
//! - [`lasso`]: coordinate-descent Lasso and the log-spaced penalty grid.
//! - [`forest`]: CART regression trees, bagging, explicit prediction weights.
//! - [`rerf`]: the combined model and its persistence format.
//! - [`tuning`]: k-fold CV over (lambda, mtry, nodesize), exhaustive and
//!   three-stage approximate searches.
//! - [`simgen`]: deterministic generators for the synthetic benchmarks.
//! - [`metrics`]: RMSE and pointwise-error records.

pub mod dataset;
pub mod error;
pub mod forest;
pub mod lasso;
pub mod metrics;
pub mod rerf;
pub mod rng;
pub mod simgen;
pub mod tuning;

pub use dataset::{
    expand_features, load_csv, split, standardize, unstandardize, write_csv, DataMatrix,
    FeatureExpansionSpec, SplitRule, Standardization,
};
pub use error::{Error, Result};
pub use forest::{
    extract_weights, fit_forest, fit_tree, predict_forest, Forest, ForestParams, Tree, TreeNode,
};
pub use lasso::{
    default_penalty_grid, fit_lasso, fit_lasso_path, lambda_max, predict_linear, residuals,
    LassoFit, PenaltyGrid,
};
pub use metrics::{median, pointwise_errors, rmse, PointwiseError};
pub use rerf::{fit_rerf, fit_rerf_with, predict_rerf, RerfModel, RerfOptions, SelectedParams};
pub use simgen::{eval_mean_function, generate, Model, Sampling, ScenarioSpec};
pub use tuning::{
    approximate_search, default_grid, grid_search, kfold_indices, tune_forest_cv, tune_lasso_cv,
    write_cv_table, SearchSettings, TuningGrid, TuningResult,
};

/// Anything that predicts a response from a [`DataMatrix`] carrying the
/// columns it was trained on.
pub trait Regressor: Sync {
    fn predict(&self, data: &DataMatrix) -> Result<Vec<f64>>;
}

impl Regressor for Forest {
    fn predict(&self, data: &DataMatrix) -> Result<Vec<f64>> {
        predict_forest(self, data)
    }
}

impl Regressor for RerfModel {
    fn predict(&self, data: &DataMatrix) -> Result<Vec<f64>> {
        predict_rerf(self, data)
    }
}

impl Regressor for LassoFit {
    fn predict(&self, data: &DataMatrix) -> Result<Vec<f64>> {
        predict_linear(self, data)
    }
}
