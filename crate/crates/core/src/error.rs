use thiserror::Error;

/// Errors raised by algebra, function-theory and quadrature operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element is not invertible (zero divisor or nilpotent)")]
    NotInvertible,
    #[error("the supplied vectors do not form a basis: {0}")]
    NotABasis(String),
    #[error("no square root of -1 found in the even part: either (A0) fails or the Newton budget was exhausted")]
    NotFound,
    #[error("element is not central: fails to commute with basis element {0}")]
    NotCentral(usize),
    #[error("element does not square to -e0 (residual {0:e})")]
    NotASquareRoot(f64),
    #[error("complex-structure extension stalled at odd dimension {0}")]
    OddDimension(usize),
    #[error("kernel evaluated at its singular point")]
    SingularPoint,
    #[error("polynomial is not qS-differentiable: {0}")]
    NotQs(String),
    #[error("point lies outside the integration domain")]
    PointOutsideDomain,
    #[error("extension requires n + m >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("invalid slice specification: {0}")]
    InvalidSlice(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
