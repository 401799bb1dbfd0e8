use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node '{label}'")]
    SelfLoop { line: usize, label: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("input too large for exhaustive enumeration: n={n} exceeds limit {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("degenerate graph: {0}")]
    Degenerate(String),

    #[error("replay mismatch: {0}")]
    Replay(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
