//! Tabular regression data: loading, validation, feature expansion,
//! standardization and train/validation splitting.

use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// A column-major numeric dataset with named predictors and an optional
/// response vector. Immutable after construction; all operations return new
/// matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    n_rows: usize,
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    response: Option<Vec<f64>>,
    response_name: Option<String>,
}

impl DataMatrix {
    /// Build a matrix from named columns. Validates shape, finiteness and
    /// name uniqueness.
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                actual: columns.len(),
            });
        }
        let n_rows = columns.first().map_or(0, |c| c.len());
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != n_rows {
                return Err(Error::invalid(format!(
                    "column `{name}` has {} rows, expected {n_rows}",
                    col.len()
                )));
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!(
                    "column `{name}` contains a non-finite value"
                )));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateColumn(name.clone()));
            }
        }
        Ok(DataMatrix {
            n_rows,
            names,
            columns,
            response: None,
            response_name: None,
        })
    }

    /// Attach a response vector.
    pub fn with_response(mut self, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                actual: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("response contains a non-finite value"));
        }
        self.response = Some(values);
        self.response_name = Some(name.into());
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn column_named(&self, name: &str) -> Result<&[f64]> {
        self.column_index(name)
            .map(|j| self.column(j))
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn response(&self) -> Option<&[f64]> {
        self.response.as_deref()
    }

    pub fn response_or_err(&self) -> Result<&[f64]> {
        self.response().ok_or(Error::MissingResponse)
    }

    pub fn response_name(&self) -> Option<&str> {
        self.response_name.as_deref()
    }

    /// Copy row `i` into `buf` (length `n_cols`).
    pub fn row_into(&self, i: usize, buf: &mut [f64]) {
        for (j, col) in self.columns.iter().enumerate() {
            buf[j] = col[i];
        }
    }

    /// New matrix holding the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> DataMatrix {
        let columns = self
            .columns
            .iter()
            .map(|col| rows.iter().map(|&i| col[i]).collect())
            .collect();
        DataMatrix {
            n_rows: rows.len(),
            names: self.names.clone(),
            columns,
            response: self
                .response
                .as_ref()
                .map(|y| rows.iter().map(|&i| y[i]).collect()),
            response_name: self.response_name.clone(),
        }
    }

    /// Replace the response, keeping predictors shared semantics intact.
    pub fn replace_response(&self, name: impl Into<String>, values: Vec<f64>) -> Result<DataMatrix> {
        let mut out = self.clone();
        out.response = None;
        out.response_name = None;
        out.with_response(name, values)
    }

    /// New matrix without the named columns.
    pub fn drop_columns(&self, names: &[String]) -> Result<DataMatrix> {
        for name in names {
            if self.column_index(name).is_none() {
                return Err(Error::UnknownColumn(name.clone()));
            }
        }
        let keep: Vec<usize> = (0..self.n_cols())
            .filter(|&j| !names.contains(&self.names[j]))
            .collect();
        Ok(DataMatrix {
            n_rows: self.n_rows,
            names: keep.iter().map(|&j| self.names[j].clone()).collect(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
            response: self.response.clone(),
            response_name: self.response_name.clone(),
        })
    }

    /// Error unless `self` carries exactly the expected column names, in order.
    pub fn check_columns(&self, expected: &[String]) -> Result<()> {
        if self.names != expected {
            return Err(Error::ColumnMismatch {
                expected: expected.to_vec(),
                actual: self.names.clone(),
            });
        }
        Ok(())
    }
}

/// Declarative description of derived predictor columns: squares,
/// pairwise products, and ratios of existing columns.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureExpansionSpec {
    #[serde(default)]
    pub quadratics: Vec<String>,
    #[serde(default)]
    pub interactions: Vec<(String, String)>,
    #[serde(default)]
    pub ratios: Vec<(String, String)>,
}

impl FeatureExpansionSpec {
    pub fn is_empty(&self) -> bool {
        self.quadratics.is_empty() && self.interactions.is_empty() && self.ratios.is_empty()
    }

    /// Names of the generated columns, in output order.
    pub fn generated_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.quadratics {
            out.push(format!("{c}^2"));
        }
        for (a, b) in &self.interactions {
            out.push(format!("{a}*{b}"));
        }
        for (a, b) in &self.ratios {
            out.push(format!("{a}/{b}"));
        }
        out
    }
}

/// Append derived columns to `data` per `spec`.
///
/// Output column order is the original columns, then quadratics, then
/// interactions, then ratios, each in listed order. Generated names follow a
/// fixed grammar (`c^2`, `a*b`, `a/b`) so configs can reference them.
pub fn expand_features(data: &DataMatrix, spec: &FeatureExpansionSpec) -> Result<DataMatrix> {
    let mut names: Vec<String> = data.names().to_vec();
    let mut columns: Vec<Vec<f64>> = data.columns().to_vec();

    for c in &spec.quadratics {
        let src = data.column_named(c)?;
        names.push(format!("{c}^2"));
        columns.push(src.iter().map(|v| v * v).collect());
    }
    for (a, b) in &spec.interactions {
        let ca = data.column_named(a)?;
        let cb = data.column_named(b)?;
        names.push(format!("{a}*{b}"));
        columns.push(ca.iter().zip(cb).map(|(x, y)| x * y).collect());
    }
    for (a, b) in &spec.ratios {
        let ca = data.column_named(a)?;
        let cb = data.column_named(b)?;
        let name = format!("{a}/{b}");
        if let Some(row) = cb.iter().position(|&v| v == 0.0) {
            return Err(Error::ZeroDenominator { column: name, row });
        }
        names.push(name);
        columns.push(ca.iter().zip(cb).map(|(x, y)| x / y).collect());
    }

    let out = DataMatrix::new(names, columns)?;
    match (data.response(), data.response_name()) {
        (Some(y), Some(name)) => out.with_response(name.to_string(), y.to_vec()),
        _ => Ok(out),
    }
}

/// How to partition rows into train and validation sets.
///
/// Threshold rules put the strict side in training and the boundary in
/// validation; band-complement rules train on rows strictly outside the band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitRule {
    RandomFraction { train_fraction: f64, seed: u64 },
    ResponseThreshold { threshold: f64, train_above: bool },
    ResponseBandComplement { low: f64, high: f64 },
    FeatureThreshold { column: String, threshold: f64, train_above: bool },
    FeatureBandComplement { column: String, low: f64, high: f64 },
}

/// Partition `data` into (train, validation) per `rule`.
pub fn split(data: &DataMatrix, rule: &SplitRule) -> Result<(DataMatrix, DataMatrix)> {
    let n = data.n_rows();
    let train_rows: Vec<usize> = match rule {
        SplitRule::RandomFraction { train_fraction, seed } => {
            if !(*train_fraction > 0.0 && *train_fraction < 1.0) {
                return Err(Error::invalid(format!(
                    "train_fraction must lie in (0, 1), got {train_fraction}"
                )));
            }
            let n_train = (train_fraction * n as f64).floor() as usize;
            let mut idx: Vec<usize> = (0..n).collect();
            let mut rng = rng::stream_rng(*seed, 0);
            idx.shuffle(&mut rng);
            let mut train: Vec<usize> = idx[..n_train].to_vec();
            train.sort_unstable();
            train
        }
        SplitRule::ResponseThreshold { threshold, train_above } => {
            let y = data.response_or_err()?;
            select_indices(y, |v| side_of_threshold(v, *threshold, *train_above))
        }
        SplitRule::ResponseBandComplement { low, high } => {
            let y = data.response_or_err()?;
            check_band(*low, *high)?;
            select_indices(y, |v| v < *low || v > *high)
        }
        SplitRule::FeatureThreshold { column, threshold, train_above } => {
            let x = data.column_named(column)?;
            select_indices(x, |v| side_of_threshold(v, *threshold, *train_above))
        }
        SplitRule::FeatureBandComplement { column, low, high } => {
            let x = data.column_named(column)?;
            check_band(*low, *high)?;
            select_indices(x, |v| v < *low || v > *high)
        }
    };

    let in_train: Vec<bool> = {
        let mut mask = vec![false; n];
        for &i in &train_rows {
            mask[i] = true;
        }
        mask
    };
    let val_rows: Vec<usize> = (0..n).filter(|&i| !in_train[i]).collect();

    if train_rows.is_empty() {
        return Err(Error::EmptyPartition { side: "train" });
    }
    if val_rows.is_empty() {
        return Err(Error::EmptyPartition { side: "validation" });
    }
    Ok((data.select_rows(&train_rows), data.select_rows(&val_rows)))
}

fn side_of_threshold(v: f64, threshold: f64, train_above: bool) -> bool {
    if train_above {
        v > threshold
    } else {
        v < threshold
    }
}

fn check_band(low: f64, high: f64) -> Result<()> {
    if low >= high {
        return Err(Error::invalid(format!(
            "band requires low < high, got [{low}, {high}]"
        )));
    }
    Ok(())
}

fn select_indices(values: &[f64], pred: impl Fn(f64) -> bool) -> Vec<usize> {
    values
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| pred(v).then_some(i))
        .collect()
}

/// Per-column centering/scaling parameters, kept for back-transforming
/// fitted coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardization {
    pub centers: Vec<f64>,
    pub scales: Vec<f64>,
    /// True where the source column was constant; such columns are zeroed.
    pub constant: Vec<bool>,
}

/// Center and scale every feature column to mean 0, sd 1 (population
/// convention, divisor n). Constant columns are zeroed and flagged. The
/// response, if present, passes through unchanged.
pub fn standardize(data: &DataMatrix) -> (DataMatrix, Standardization) {
    let n = data.n_rows() as f64;
    let mut centers = Vec::with_capacity(data.n_cols());
    let mut scales = Vec::with_capacity(data.n_cols());
    let mut constant = Vec::with_capacity(data.n_cols());
    let mut columns = Vec::with_capacity(data.n_cols());

    for col in data.columns() {
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let sd = var.sqrt();
        if sd == 0.0 {
            centers.push(mean);
            scales.push(0.0);
            constant.push(true);
            columns.push(vec![0.0; col.len()]);
        } else {
            centers.push(mean);
            scales.push(sd);
            constant.push(false);
            columns.push(col.iter().map(|v| (v - mean) / sd).collect());
        }
    }

    let out = DataMatrix {
        n_rows: data.n_rows(),
        names: data.names().to_vec(),
        columns,
        response: data.response().map(|y| y.to_vec()),
        response_name: data.response_name().map(|s| s.to_string()),
    };
    (out, Standardization { centers, scales, constant })
}

/// Invert `standardize`. Constant columns are restored to their center value.
pub fn unstandardize(data: &DataMatrix, params: &Standardization) -> DataMatrix {
    let columns = data
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            if params.constant[j] {
                vec![params.centers[j]; col.len()]
            } else {
                col.iter()
                    .map(|v| v * params.scales[j] + params.centers[j])
                    .collect()
            }
        })
        .collect();
    DataMatrix {
        n_rows: data.n_rows(),
        names: data.names().to_vec(),
        columns,
        response: data.response().map(|y| y.to_vec()),
        response_name: data.response_name().map(|s| s.to_string()),
    }
}

/// Load a CSV file with a header row; `response_column` becomes the response.
///
/// Rows containing missing (empty), non-numeric or non-finite cells are
/// dropped; the second return value is the dropped-row count.
pub fn load_csv(path: impl AsRef<Path>, response_column: &str) -> Result<(DataMatrix, usize)> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                Error::io(path, std::io::Error::other(e.to_string()))
            }
            _ => Error::Csv {
                path: path.display().to_string(),
                message: e.to_string(),
            },
        })?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Csv {
            path: path.display().to_string(),
            message: e.to_string(),
        })?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();

    for (i, name) in headers.iter().enumerate() {
        if headers[..i].contains(name) {
            return Err(Error::DuplicateColumn(name.clone()));
        }
    }
    let response_idx = headers
        .iter()
        .position(|h| h == response_column)
        .ok_or_else(|| Error::UnknownColumn(response_column.to_string()))?;

    let n_fields = headers.len();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); n_fields];
    let mut dropped = 0usize;
    let mut row_buf: Vec<f64> = vec![0.0; n_fields];

    for record in reader.records() {
        let record = record.map_err(|e| Error::Csv {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        if record.len() != n_fields {
            dropped += 1;
            continue;
        }
        let mut ok = true;
        for (j, field) in record.iter().enumerate() {
            match field.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => row_buf[j] = v,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for (j, col) in columns.iter_mut().enumerate() {
                col.push(row_buf[j]);
            }
        } else {
            dropped += 1;
        }
    }

    let response = columns.remove(response_idx);
    if response.is_empty() {
        return Err(Error::NoUsableRows(format!(
            "`{}` has no rows with complete numeric values",
            path.display()
        )));
    }
    let mut names = headers;
    names.remove(response_idx);

    let data = DataMatrix::new(names, columns)?.with_response(response_column, response)?;
    Ok((data, dropped))
}

/// Write `data` to CSV: predictor columns in order, response (if any) last.
pub fn write_csv(data: &DataMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::Csv {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;

    let mut header: Vec<&str> = data.names().iter().map(|s| s.as_str()).collect();
    if let Some(name) = data.response_name() {
        header.push(name);
    }
    writer.write_record(&header).map_err(|e| Error::Csv {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;

    let mut record: Vec<String> = Vec::with_capacity(header.len());
    for i in 0..data.n_rows() {
        record.clear();
        for col in data.columns() {
            record.push(format!("{}", col[i]));
        }
        if let Some(y) = data.response() {
            record.push(format!("{}", y[i]));
        }
        writer.write_record(&record).map_err(|e| Error::Csv {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn tmp_csv(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    fn toy(n: usize) -> DataMatrix {
        let x1: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let x2: Vec<f64> = (0..n).map(|i| (i * i) as f64 * 0.1).collect();
        let y: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + 1.0).collect();
        DataMatrix::new(vec!["x1".into(), "x2".into()], vec![x1, x2])
            .unwrap()
            .with_response("y", y)
            .unwrap()
    }

    #[test]
    fn load_minimal_csv() {
        let f = tmp_csv("a,b\n1,2\n");
        let (data, dropped) = load_csv(f.path(), "b").unwrap();
        assert_eq!(data.n_rows(), 1);
        assert_eq!(data.n_cols(), 1);
        assert_eq!(data.response().unwrap(), &[2.0]);
        assert_eq!(dropped, 0);
    }

    #[test]
    fn load_drops_rows_with_missing_cells() {
        let mut body = String::from("a,b\n");
        for i in 0..10 {
            if i % 3 == 0 && i > 0 {
                body.push_str(&format!("{i},\n"));
            } else {
                body.push_str(&format!("{i},{}\n", i * 2));
            }
        }
        let f = tmp_csv(&body);
        let (data, dropped) = load_csv(f.path(), "b").unwrap();
        assert_eq!(data.n_rows(), 7);
        assert_eq!(dropped, 3);
    }

    #[test]
    fn load_errors() {
        assert!(matches!(
            load_csv("/nonexistent/nope.csv", "y"),
            Err(Error::Io { .. })
        ));
        let f = tmp_csv("a,b\n1,2\n");
        assert!(matches!(
            load_csv(f.path(), "zzz"),
            Err(Error::UnknownColumn(_))
        ));
        let f = tmp_csv("a,b\n");
        assert!(matches!(load_csv(f.path(), "b"), Err(Error::NoUsableRows(_))));
        let f = tmp_csv("a,b\nx,y\nfoo,bar\n");
        assert!(matches!(load_csv(f.path(), "b"), Err(Error::NoUsableRows(_))));
    }

    #[test]
    fn csv_round_trip() {
        let data = toy(5);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_csv(&data, &path).unwrap();
        let (back, dropped) = load_csv(&path, "y").unwrap();
        assert_eq!(dropped, 0);
        assert_eq!(back, data);
    }

    #[test]
    fn expansion_identity_when_empty() {
        let data = toy(4);
        let out = expand_features(&data, &FeatureExpansionSpec::default()).unwrap();
        assert_eq!(out, data);
    }

    #[test]
    fn expansion_quadratic_single_value() {
        let data = DataMatrix::new(vec!["x".into()], vec![vec![2.0]]).unwrap();
        let spec = FeatureExpansionSpec {
            quadratics: vec!["x".into()],
            ..Default::default()
        };
        let out = expand_features(&data, &spec).unwrap();
        assert_eq!(out.names(), &["x".to_string(), "x^2".to_string()]);
        assert_eq!(out.column(1), &[4.0]);
    }

    #[test]
    fn expansion_order_and_names() {
        let data = toy(3);
        let spec = FeatureExpansionSpec {
            quadratics: vec!["x1".into()],
            interactions: vec![("x1".into(), "x2".into())],
            ratios: vec![("x2".into(), "x1".into())],
        };
        // x1 = 0 makes the ratio denominator zero on row 0
        assert!(matches!(
            expand_features(&data, &spec),
            Err(Error::ZeroDenominator { row: 0, .. })
        ));
        let spec = FeatureExpansionSpec {
            quadratics: vec!["x1".into()],
            interactions: vec![("x1".into(), "x2".into())],
            ratios: vec![],
        };
        let out = expand_features(&data, &spec).unwrap();
        assert_eq!(
            out.names(),
            &["x1", "x2", "x1^2", "x1*x2"].map(String::from)
        );
        assert_eq!(out.column(2), &[0.0, 1.0, 4.0]);
        // same spec applied to the original data again gives identical output
        let again = expand_features(&data, &spec).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn expansion_unknown_column() {
        let data = toy(3);
        let spec = FeatureExpansionSpec {
            quadratics: vec!["nope".into()],
            ..Default::default()
        };
        assert!(matches!(
            expand_features(&data, &spec),
            Err(Error::UnknownColumn(_))
        ));
    }

    #[test]
    fn random_fraction_split_is_deterministic() {
        let data = toy(10);
        let rule = SplitRule::RandomFraction { train_fraction: 0.5, seed: 99 };
        let (tr1, va1) = split(&data, &rule).unwrap();
        let (tr2, va2) = split(&data, &rule).unwrap();
        assert_eq!(tr1.n_rows(), 5);
        assert_eq!(va1.n_rows(), 5);
        assert_eq!(tr1, tr2);
        assert_eq!(va1, va2);
    }

    #[test]
    fn threshold_split_sides() {
        let data = toy(10); // y = 1, 3, ..., 19
        let (tr, va) = split(
            &data,
            &SplitRule::ResponseThreshold { threshold: 9.0, train_above: true },
        )
        .unwrap();
        assert!(tr.response().unwrap().iter().all(|&v| v > 9.0));
        assert!(va.response().unwrap().iter().all(|&v| v <= 9.0));
        assert_eq!(tr.n_rows() + va.n_rows(), 10);

        let (tr, va) = split(
            &data,
            &SplitRule::FeatureBandComplement { column: "x1".into(), low: 2.0, high: 6.0 },
        )
        .unwrap();
        assert!(tr.column(0).iter().all(|&v| v < 2.0 || v > 6.0));
        assert!(va.column(0).iter().all(|&v| (2.0..=6.0).contains(&v)));
    }

    #[test]
    fn split_empty_partition_is_an_error() {
        let data = toy(5);
        let rule = SplitRule::ResponseThreshold { threshold: -100.0, train_above: true };
        assert!(matches!(
            split(&data, &rule),
            Err(Error::EmptyPartition { side: "validation" })
        ));
        let rule = SplitRule::ResponseThreshold { threshold: 100.0, train_above: true };
        assert!(matches!(
            split(&data, &rule),
            Err(Error::EmptyPartition { side: "train" })
        ));
    }

    #[test]
    fn standardize_basics() {
        let data = DataMatrix::new(
            vec!["a".into(), "c".into()],
            vec![vec![1.0, 2.0, 3.0], vec![5.0, 5.0, 5.0]],
        )
        .unwrap();
        let (std, params) = standardize(&data);
        let a = std.column(0);
        let mean: f64 = a.iter().sum::<f64>() / 3.0;
        let var: f64 = a.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 3.0;
        assert!(mean.abs() < 1e-12);
        assert!((var - 1.0).abs() < 1e-12);
        assert_eq!(std.column(1), &[0.0, 0.0, 0.0]);
        assert_eq!(params.constant, vec![false, true]);

        let back = unstandardize(&std, &params);
        for j in 0..2 {
            for i in 0..3 {
            assert!((back.column(j)[i] - data.column(j)[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn drop_columns_removes_named() {
        let data = toy(4);
        let out = data.drop_columns(&["x2".into()]).unwrap();
        assert_eq!(out.names(), &["x1".to_string()]);
        assert!(data.drop_columns(&["zzz".into()]).is_err());
    }
}
