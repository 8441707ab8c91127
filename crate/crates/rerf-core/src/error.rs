//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by data handling, fitting and tuning.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error in `{path}`: {message}")]
    Csv { path: String, message: String },

    #[error("column `{0}` not found")]
    UnknownColumn(String),

    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),

    #[error("column mismatch: model expects {expected:?}, data has {actual:?}")]
    ColumnMismatch {
        expected: Vec<String>,
        actual: Vec<String>,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{side} partition is empty after split")]
    EmptyPartition { side: &'static str },

    #[error("zero denominator in ratio column `{column}` at row {row}")]
    ZeroDenominator { column: String, row: usize },

    #[error("response vector required but absent")]
    MissingResponse,

    #[error("no usable rows: {0}")]
    NoUsableRows(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
