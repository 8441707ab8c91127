//! L1-penalized least squares via cyclic coordinate descent.
//!
//! The objective on standardized features (mean 0, sd 1, divisor n) with a
//! centered response is
//!
//! ```text
//!   (1/2n) * sum_i (y_i - b0 - x_i' b)^2 + lambda * sum_j |b_j|
//! ```
//!
//! with the intercept unpenalized and recovered analytically. Coefficients
//! are reported back on the original feature scale.

use serde::{Deserialize, Serialize};

use crate::dataset::{standardize, DataMatrix, Standardization};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 10_000;
const COEF_TOL: f64 = 1e-9;

/// A fitted Lasso model for one penalty value. Coefficients are on the
/// original (unstandardized) feature scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LassoFit {
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    pub lambda: f64,
    /// Indices of nonzero coefficients.
    pub active_set: Vec<usize>,
    /// Coordinate-descent sweeps performed.
    pub n_iterations: usize,
    pub converged: bool,
    /// Standardization applied to the design at fit time.
    pub standardization: Standardization,
    pub feature_names: Vec<String>,
}

impl LassoFit {
    fn from_standardized(
        beta_std: &[f64],
        lambda: f64,
        sweeps: usize,
        converged: bool,
        y_mean: f64,
        params: &Standardization,
        feature_names: &[String],
    ) -> Self {
        let mut coefficients = vec![0.0; beta_std.len()];
        let mut intercept = y_mean;
        for j in 0..beta_std.len() {
            if !params.constant[j] && beta_std[j] != 0.0 {
                coefficients[j] = beta_std[j] / params.scales[j];
                intercept -= beta_std[j] * params.centers[j] / params.scales[j];
            }
        }
        let active_set = coefficients
            .iter()
            .enumerate()
            .filter_map(|(j, &b)| (b != 0.0).then_some(j))
            .collect();
        LassoFit {
            coefficients,
            intercept,
            lambda,
            active_set,
            n_iterations: sweeps,
            converged,
            standardization: params.clone(),
            feature_names: feature_names.to_vec(),
        }
    }
}

/// The paper's 100-point penalty grid: 0.001 to 100, equally spaced on the
/// log scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltyGrid {
    values: Vec<f64>,
}

impl PenaltyGrid {
    /// Build from explicit values; must be positive and strictly increasing.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("penalty grid must be non-empty"));
        }
        if values[0] <= 0.0 {
            return Err(Error::invalid("penalty grid values must be positive"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("penalty grid must be strictly increasing"));
        }
        Ok(PenaltyGrid { values })
    }

    /// Geometric grid with the given endpoints.
    pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 || lo <= 0.0 || hi <= lo {
            return Err(Error::invalid("log grid requires 0 < lo < hi and count >= 2"));
        }
        let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
        let mut values: Vec<f64> = (0..count)
            .map(|h| (ln_lo + h as f64 * (ln_hi - ln_lo) / (count - 1) as f64).exp())
            .collect();
        // pin the endpoints exactly
        values[0] = lo;
        values[count - 1] = hi;
        PenaltyGrid::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// 100 candidate penalties from 0.001 to 100, equally spaced on the log scale.
pub fn default_penalty_grid() -> PenaltyGrid {
    PenaltyGrid::log_spaced(0.001, 100.0, 100).expect("valid default grid")
}

/// Standardized design with the centered response; reusable across penalty
/// values so a whole path costs one standardization.
pub(crate) struct LassoProblem {
    columns: Vec<Vec<f64>>,
    y_centered: Vec<f64>,
    y_mean: f64,
    params: Standardization,
    feature_names: Vec<String>,
    n: usize,
}

impl LassoProblem {
    pub(crate) fn new(train: &DataMatrix) -> Result<Self> {
        let y = train.response_or_err()?;
        if train.n_rows() < 2 {
            return Err(Error::invalid("lasso requires at least 2 rows"));
        }
        let (std_data, params) = standardize(train);
        let n = train.n_rows();
        let y_mean = y.iter().sum::<f64>() / n as f64;
        let y_centered: Vec<f64> = y.iter().map(|v| v - y_mean).collect();
        Ok(LassoProblem {
            columns: std_data.columns().to_vec(),
            y_centered,
            y_mean,
            params,
            feature_names: train.names().to_vec(),
            n,
        })
    }

    /// Smallest penalty at which every coefficient is zero.
    pub(crate) fn lambda_max(&self) -> f64 {
        let n = self.n as f64;
        self.columns
            .iter()
            .map(|col| {
                col.iter()
                    .zip(&self.y_centered)
                    .map(|(x, y)| x * y)
                    .sum::<f64>()
                    .abs()
                    / n
            })
            .fold(0.0, f64::max)
    }

    /// Objective value at a standardized-scale coefficient vector.
    fn objective(&self, beta: &[f64], residual: &[f64], lambda: f64) -> f64 {
        let rss: f64 = residual.iter().map(|r| r * r).sum();
        rss / (2.0 * self.n as f64) + lambda * beta.iter().map(|b| b.abs()).sum::<f64>()
    }

    /// Cyclic coordinate descent from `beta` (standardized scale), in place.
    /// Returns (sweeps, converged); `residual` is maintained as y - X beta.
    ///
    /// With unit-variance columns the coordinate update is a plain soft
    /// threshold; `sweep_objectives`, when given, records the objective after
    /// every sweep.
    fn descend(
        &self,
        beta: &mut [f64],
        residual: &mut [f64],
        lambda: f64,
        sweep_objectives: Option<&mut Vec<f64>>,
    ) -> (usize, bool) {
        let n = self.n as f64;
        let mut trace = sweep_objectives;
        for sweep in 1..=MAX_SWEEPS {
            let mut max_delta = 0.0f64;
            for (j, col) in self.columns.iter().enumerate() {
                if self.params.constant[j] {
                    continue;
                }
                let b_old = beta[j];
                let mut rho = 0.0;
                for (x, r) in col.iter().zip(residual.iter()) {
                    rho += x * r;
                }
                rho = rho / n + b_old;
                let b_new = soft_threshold(rho, lambda);
                if b_new != b_old {
                    let delta = b_new - b_old;
                    for (x, r) in col.iter().zip(residual.iter_mut()) {
                        *r -= delta * x;
                    }
                    beta[j] = b_new;
                    max_delta = max_delta.max(delta.abs());
                }
            }
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(self.objective(beta, residual, lambda));
            }
            if max_delta < COEF_TOL {
                return (sweep, true);
            }
        }
        (MAX_SWEEPS, false)
    }

    pub(crate) fn fit(&self, lambda: f64) -> LassoFit {
        let mut beta = vec![0.0; self.columns.len()];
        let mut residual = self.y_centered.clone();
        let (sweeps, converged) = self.descend(&mut beta, &mut residual, lambda, None);
        LassoFit::from_standardized(
            &beta,
            lambda,
            sweeps,
            converged,
            self.y_mean,
            &self.params,
            &self.feature_names,
        )
    }

    /// Fit every grid value, warm-starting each fit from the next-larger
    /// penalty. Returned in grid (ascending) order.
    pub(crate) fn fit_path(&self, grid: &PenaltyGrid) -> Vec<LassoFit> {
        let mut beta = vec![0.0; self.columns.len()];
        let mut residual = self.y_centered.clone();
        let mut fits: Vec<LassoFit> = Vec::with_capacity(grid.len());
        for &lambda in grid.values().iter().rev() {
            let (sweeps, converged) = self.descend(&mut beta, &mut residual, lambda, None);
            fits.push(LassoFit::from_standardized(
                &beta,
                lambda,
                sweeps,
                converged,
                self.y_mean,
                &self.params,
                &self.feature_names,
            ));
        }
        fits.reverse();
        fits
    }

    #[cfg(test)]
    fn fit_traced(&self, lambda: f64) -> (LassoFit, Vec<f64>) {
        let mut beta = vec![0.0; self.columns.len()];
        let mut residual = self.y_centered.clone();
        let mut trace = Vec::new();
        let (sweeps, converged) = self.descend(&mut beta, &mut residual, lambda, Some(&mut trace));
        let fit = LassoFit::from_standardized(
            &beta,
            lambda,
            sweeps,
            converged,
            self.y_mean,
            &self.params,
            &self.feature_names,
        );
        (fit, trace)
    }
}

fn soft_threshold(z: f64, gamma: f64) -> f64 {
    if z > gamma {
        z - gamma
    } else if z < -gamma {
        z + gamma
    } else {
        0.0
    }
}

/// Fit the Lasso at one penalty value. `lambda = 0` gives unpenalized least
/// squares; `lambda >= lambda_max` gives the intercept-only model.
///
/// Non-convergence is reported through `converged = false`, never silently.
pub fn fit_lasso(train: &DataMatrix, lambda: f64) -> Result<LassoFit> {
    if lambda < 0.0 {
        return Err(Error::invalid(format!("lambda must be nonnegative, got {lambda}")));
    }
    Ok(LassoProblem::new(train)?.fit(lambda))
}

/// Fit a whole penalty path with warm starts; one fit per grid value, in
/// grid order.
pub fn fit_lasso_path(train: &DataMatrix, grid: &PenaltyGrid) -> Result<Vec<LassoFit>> {
    Ok(LassoProblem::new(train)?.fit_path(grid))
}

/// Smallest penalty at which the Lasso on `train` is the null model.
pub fn lambda_max(train: &DataMatrix) -> Result<f64> {
    Ok(LassoProblem::new(train)?.lambda_max())
}

/// Linear-part predictions: intercept + X beta.
pub fn predict_linear(fit: &LassoFit, data: &DataMatrix) -> Result<Vec<f64>> {
    data.check_columns(&fit.feature_names)?;
    let mut out = vec![fit.intercept; data.n_rows()];
    for &j in &fit.active_set {
        let b = fit.coefficients[j];
        for (o, x) in out.iter_mut().zip(data.column(j)) {
            *o += b * x;
        }
    }
    Ok(out)
}

/// Residuals y - (intercept + X beta) on data carrying a response.
pub fn residuals(fit: &LassoFit, data: &DataMatrix) -> Result<Vec<f64>> {
    let y = data.response_or_err()?;
    let fitted = predict_linear(fit, data)?;
    Ok(y.iter().zip(fitted).map(|(yi, fi)| yi - fi).collect())
}
