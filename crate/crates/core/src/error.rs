use thiserror::Error;

/// Errors raised across the library.
///
/// The variants map one-to-one onto the CLI exit-code classes: parse and
/// validation problems, capacity overruns, and internal integrity breaches.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("integrity violation: {0}")]
    Integrity(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
