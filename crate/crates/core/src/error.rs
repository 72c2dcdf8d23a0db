use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("functional basis mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: String, got: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("functional is not multiplicative: fails on ({0}, {1})")]
    NotMultiplicative(String, String),
    #[error("functional is not positive")]
    NotPositive,
    #[error("not a compact quantum group datum: {0}")]
    NotQuantumGroup(String),
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("size cap exceeded: {what} would exceed cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
