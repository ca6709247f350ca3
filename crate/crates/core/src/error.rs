use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: PathBuf,
        line: u64,
        message: String,
    },

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("lookup error: {0}")]
    Lookup(String),

    #[error("interval error: {0}")]
    Interval(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),

    #[error("unsupported rollup: {0}")]
    UnsupportedRollup(String),

    #[error("cache miss: {0}")]
    CacheMiss(String),

    #[error("brute-force cap exceeded: {points} time points > cap {cap}")]
    CapExceeded { points: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl GraphError {
    pub(crate) fn parse(file: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        GraphError::Parse {
            file: file.into(),
            line,
            message: message.into(),
        }
    }
}
