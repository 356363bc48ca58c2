//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// Every error carries a stable machine-readable code (`Error::code`) that the
/// CLI prints as a single-line prefix and maps onto process exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated a precondition (bad dimension, empty input, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A numeric operation produced non-finite values or an ill-posed matrix.
    #[error("numeric failure: {0}")]
    NumericFailure(String),

    /// An internal consistency check failed (e.g. a rejection envelope was
    /// violated beyond tolerance). Indicates a bug, not bad user input.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    /// Filesystem / serialization problems.
    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::NumericFailure(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Error::Io(msg.into())
    }

    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NumericFailure(_) => "numeric-failure",
            Error::Inconsistency(_) => "internal-inconsistency",
            Error::Io(_) => "io-failure",
        }
    }

    /// Process exit code used by the CLI (0 is success).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) => 2,
            Error::NumericFailure(_) | Error::Inconsistency(_) => 3,
            Error::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
