use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("map is not a monomorphism: {0}")]
    NotMono(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    /// A hypothesis of the requested construction fails for the input, e.g. the
    /// fraction operation on a category whose `beta_2` is not bijective.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("enumeration too large: bound {bound} exceeds limit {limit}")]
    Resource { bound: u128, limit: u128 },
    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // the message already carries "at line L column C" when known
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
