use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system {0}")]
    InvalidType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("{0} is not a minimal coset representative")]
    NotMinimalRepresentative(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-reduced word: {0}")]
    NonReduced(String),
}

pub type Result<T> = std::result::Result<T, Error>;
