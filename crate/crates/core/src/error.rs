use thiserror::Error;

use crate::designer::Rejection;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed inputs that violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The framework fails one of its structural invariants.
    #[error("invalid framework: {0}")]
    Invalid(String),

    /// A random choice turned out degenerate; retry with another seed.
    #[error("degenerate choice: {0}")]
    Degenerate(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("invalid diagram: {0}")]
    DiagramInvalid(String),

    #[error("design rejected: {0}")]
    Rejected(Rejection),

    /// An exact self-check failed. Indicates a bug or a corrupted input.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
