use thiserror::Error;

/// Errors raised by model evaluation, input validation and table loading.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    TableParse { line: usize, message: String },
    #[error("optical table: {0}")]
    Table(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
