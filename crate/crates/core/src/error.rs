use thiserror::Error;

use crate::presentation::ValidationError;

/// Crate-wide error. The variants map one-to-one onto the CLI exit codes
/// and the FFI status codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Input(_) => 2,
            Error::Precondition(_) => 3,
            Error::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Input(_) => "input",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
