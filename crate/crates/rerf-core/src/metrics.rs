//! Prediction-quality metrics and pointwise error records.

use serde::{Deserialize, Serialize};

use crate::dataset::DataMatrix;
use crate::error::{Error, Result};
use crate::Regressor;

/// Root mean square error between two equal-length vectors.
pub fn rmse(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::DimensionMismatch {
            expected: actual.len(),
            actual: predicted.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::invalid("rmse of empty vectors"));
    }
    let mse = predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a) * (p - a))
        .sum::<f64>()
        / predicted.len() as f64;
    Ok(mse.sqrt())
}

/// Median of a slice (mean of the middle pair for even lengths).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let mut v = values.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// One validation-row error paired with the value of a focus predictor,
/// ready for external scatter/smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointwiseError {
    pub focus: f64,
    pub observed: f64,
    pub predicted: f64,
    /// observed - predicted
    pub error: f64,
}

/// Per-row prediction errors of `model` on `validation`, keyed by
/// `focus_column`.
pub fn pointwise_errors(
    model: &dyn Regressor,
    validation: &DataMatrix,
    focus_column: &str,
) -> Result<Vec<PointwiseError>> {
    let focus = validation.column_named(focus_column)?.to_vec();
    let y = validation.response_or_err()?;
    let predicted = model.predict(validation)?;
    Ok(focus
        .into_iter()
        .zip(y.iter().zip(predicted))
        .map(|(f, (obs, pred))| PointwiseError {
            focus: f,
            observed: *obs,
            predicted: pred,
            error: obs - pred,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmse_examples() {
        assert_eq!(rmse(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
        let v = rmse(&[0.0, 0.0], &[3.0, 4.0]).unwrap();
        assert!((v - 12.5f64.sqrt()).abs() < 1e-15);
        // constant offset c gives rmse |c|
        let v = rmse(&[1.0, 2.0, 3.0], &[3.5, 4.5, 5.5]).unwrap();
        assert!((v - 2.5).abs() < 1e-15);
    }

    #[test]
    fn rmse_errors() {
        assert!(rmse(&[1.0], &[1.0, 2.0]).is_err());
        assert!(rmse(&[], &[]).is_err());
    }

    #[test]
    fn median_odd_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&[5.0]), 5.0);
    }

    #[test]
    fn pointwise_errors_perfect_model() {
        use crate::forest::{fit_forest, ForestParams};
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let data = DataMatrix::new(vec!["x".into()], vec![x])
            .unwrap()
            .with_response("y", vec![2.0; 20])
            .unwrap();
        let forest = fit_forest(&data, &ForestParams::new(1, 5, 0).with_n_trees(5)).unwrap();
        let records = pointwise_errors(&forest, &data, "x").unwrap();
        assert_eq!(records.len(), 20);
        for r in records {
            assert_eq!(r.error, 0.0);
            assert_eq!(r.predicted, 2.0);
        }
    }

    #[test]
    fn pointwise_errors_unknown_column() {
        use crate::forest::{fit_forest, ForestParams};
        let data = DataMatrix::new(vec!["x".into()], vec![vec![1.0, 2.0]])
            .unwrap()
            .with_response("y", vec![1.0, 2.0])
            .unwrap();
        let forest = fit_forest(&data, &ForestParams::new(1, 1, 0).with_n_trees(2)).unwrap();
        assert!(pointwise_errors(&forest, &data, "zzz").is_err());
    }
}
