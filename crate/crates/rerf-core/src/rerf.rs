//! Regression-enhanced random forests.
//!
//! Fit pipeline: expand the design, run the Lasso at a given penalty, then
//! fit a random forest to the Lasso residuals against the original
//! predictors. Prediction is the sum of the linear part (on the expanded
//! design) and the forest part. With the penalty at or above `lambda_max`
//! the Lasso is the intercept-only model and the whole thing reduces to a
//! plain random forest.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::{expand_features, DataMatrix, FeatureExpansionSpec};
use crate::error::{Error, Result};
use crate::forest::{fit_forest, predict_forest, Forest, ForestParams, DEFAULT_N_TREES};
use crate::lasso::{fit_lasso, predict_linear, residuals, LassoFit};

/// A selected (lambda, mtry, nodesize) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectedParams {
    pub lambda: f64,
    pub mtry: usize,
    pub nodesize: usize,
}

/// Knobs that do not come from the tuning triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RerfOptions {
    pub n_trees: usize,
    /// Fit the forest on the expanded design instead of the original
    /// predictors. Off by default: the residual forest sees the raw columns.
    pub forest_on_expanded: bool,
    pub bootstrap: bool,
}

impl Default for RerfOptions {
    fn default() -> Self {
        RerfOptions {
            n_trees: DEFAULT_N_TREES,
            forest_on_expanded: false,
            bootstrap: true,
        }
    }
}

/// A fitted regression-enhanced random forest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RerfModel {
    pub expansion: FeatureExpansionSpec,
    pub lasso: LassoFit,
    pub forest: Forest,
    pub tuning: SelectedParams,
}

/// Serialized model file: a version tag wrapping the model itself.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    model: RerfModel,
}

const MODEL_FORMAT_VERSION: u32 = 1;

impl RerfModel {
    pub fn predict(&self, points: &DataMatrix) -> Result<Vec<f64>> {
        predict_rerf(self, points)
    }

    /// Write the model to a self-describing JSON file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            model: self.clone(),
        };
        let body =
            serde_json::to_vec(&file).map_err(|e| Error::Serialization(e.to_string()))?;
        fs::write(path, body).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<RerfModel> {
        let path = path.as_ref();
        let body = fs::read(path).map_err(|e| Error::io(path, e))?;
        let file: ModelFile =
            serde_json::from_slice(&body).map_err(|e| Error::Serialization(e.to_string()))?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Serialization(format!(
                "unsupported model format version {}",
                file.format_version
            )));
        }
        Ok(file.model)
    }
}

/// Fit a RERF with default options (500 trees, bootstrap, residual forest on
/// the original predictors).
pub fn fit_rerf(
    train: &DataMatrix,
    expansion: &FeatureExpansionSpec,
    lambda: f64,
    mtry: usize,
    nodesize: usize,
    seed: u64,
) -> Result<RerfModel> {
    fit_rerf_with(train, expansion, lambda, mtry, nodesize, seed, &RerfOptions::default())
}

/// Fit a RERF: expand, Lasso at `lambda`, forest on the residuals.
///
/// The seed feeds the forest unchanged (the Lasso consumes no randomness),
/// so a plain forest fit with the same seed and (mtry, nodesize) is
/// reproduced exactly when the Lasso is null.
pub fn fit_rerf_with(
    train: &DataMatrix,
    expansion: &FeatureExpansionSpec,
    lambda: f64,
    mtry: usize,
    nodesize: usize,
    seed: u64,
    options: &RerfOptions,
) -> Result<RerfModel> {
    let expanded = expand_features(train, expansion)?;
    let lasso = fit_lasso(&expanded, lambda)?;
    let resid = residuals(&lasso, &expanded)?;

    let forest_train = if options.forest_on_expanded { &expanded } else { train }
        .replace_response("residual", resid)?;
    let params = ForestParams {
        n_trees: options.n_trees,
        mtry,
        nodesize,
        seed,
        bootstrap: options.bootstrap,
    };
    let forest = fit_forest(&forest_train, &params)?;

    Ok(RerfModel {
        expansion: expansion.clone(),
        lasso,
        forest,
        tuning: SelectedParams { lambda, mtry, nodesize },
    })
}

/// Predict at `points`, which carry the original (pre-expansion) columns; the
/// expansion is re-applied internally. Linear part plus forest part.
pub fn predict_rerf(model: &RerfModel, points: &DataMatrix) -> Result<Vec<f64>> {
    let expanded = expand_features(points, &model.expansion)?;
    let linear = predict_linear(&model.lasso, &expanded)?;
    let forest_input = if model.forest.feature_names() == expanded.names() {
        &expanded
    } else {
        points
    };
    let forest_part = predict_forest(&model.forest, forest_input)?;
    Ok(linear
        .iter()
        .zip(forest_part)
        .map(|(l, f)| l + f)
        .collect())
}
