use thiserror::Error;

/// Errors reported by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes or indices do not fit together.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An argument violates the operation's precondition.
    #[error("argument error: {0}")]
    Argument(String),

    /// A size cap or search budget was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Malformed text input. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Oracle cross-validation found methods that disagree.
    #[error("methods disagree: {0}")]
    Disagreement(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
