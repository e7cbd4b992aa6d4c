//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vertex index {index} out of range for graph with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("input matrix is not standardized")]
    NotStandardized,

    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("degenerate lambda grid: all off-diagonal covariances are zero")]
    DegenerateGrid,

    #[error("candidate path is empty")]
    EmptyPath,

    #[error("solver failure at lambda={lambda}: {message}")]
    Solver { lambda: f64, message: String },

    #[error("zero variance input: {0}")]
    ZeroVariance(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
