use thiserror::Error;

/// Failure of a CLI run, mapped to the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, configuration or model parameters.
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] casimir_core::Error),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        1
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Output(e.to_string())
    }
}
