use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the GA library and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid chromosome length {0}: must be at least 2")]
    InvalidLength(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("population is empty")]
    EmptyPopulation,

    #[error("shift constant for `{0}` has not been computed")]
    UninitializedOracle(String),

    #[error("`{0}` is a maximization problem and has no shift constant")]
    InvalidDirection(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("{path}:{line}: {message}")]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("oracle cache {path}: {message}")]
    CacheConflict { path: PathBuf, message: String },

    #[error("malformed {what}: {message}")]
    Parse { what: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
