use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid instance: {field}: {reason}")]
    InvalidInstance { field: String, reason: String },

    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("negative radius {value} for sensor {index}")]
    NegativeRadius { index: usize, value: f64 },

    #[error("position {position} is outside the reachable range [{lo}, {hi}]")]
    OutOfReach { position: f64, lo: f64, hi: f64 },

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("lifetime must be positive and finite, got {0}")]
    InvalidLifetime(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("instance too large: {n} sensors exceeds the limit of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    pub(crate) fn instance(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidInstance {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
