use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid model: {0}")]
    Validation(String),

    #[error("k must be ≥ 3 (got {0})")]
    InvalidK(i64),

    /// A degree slice or matrix would exceed a configured cap.
    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity {
        what: String,
        requested: usize,
        cap: usize,
    },

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    /// Two independent routes disagreed. Never expected.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
