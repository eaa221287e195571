use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("class {index} ({name}) has no training samples")]
    EmptyClass { index: usize, name: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("{path}: row {row}, column {column}: {message}")]
    Ingest {
        path: PathBuf,
        row: usize,
        column: String,
        message: String,
    },

    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed delimited data")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("feature column {column} has no present values to impute from")]
    ColumnAllMissing { column: usize },

    #[error("cannot split: class {index} ({name}) has {count} samples, at least 3 are required")]
    ClassTooSmall {
        index: usize,
        name: String,
        count: usize,
    },
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
