use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} tensor arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polytope must be {required}-dimensional, found dimension {found}")]
    NotFullDimensional { required: usize, found: usize },

    #[error("flip refused: {0}")]
    FlipRefused(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
