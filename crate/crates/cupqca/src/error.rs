use thiserror::Error;

/// Errors produced by ring arithmetic, matrix shape checks, and constructors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible rings: {0}")]
    IncompatibleRing(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u32),

    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u32, u32),

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("map has a nonzero XZ block and cannot be reduced to separated form")]
    NotReducible,

    #[error("matrix is not monomial-invertible: {0}")]
    NotMonomial(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
