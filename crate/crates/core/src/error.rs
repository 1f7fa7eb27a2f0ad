use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve of {requested} entries exceeds the memory budget of {budget} entries")]
    Capacity { requested: u64, budget: u64 },

    #[error("index {index} is outside the sieve range 1..={limit}")]
    OutOfRange { index: u64, limit: u64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("{0} is not a primorial")]
    NotPrimorial(u64),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("operation on an order-0 series has an empty result")]
    EmptySeries,

    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("Gram matrix is ill-conditioned (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("zeta has a pole at s = 1")]
    Pole,

    #[error("corrupt cache {path}: {reason}")]
    CorruptCache { path: PathBuf, reason: String },

    #[error("refusing to resume from {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
