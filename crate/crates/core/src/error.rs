use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("configuration mismatch: {0}")]
    ConfigurationMismatch(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
