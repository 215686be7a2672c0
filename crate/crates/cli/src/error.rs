use std::path::PathBuf;

use blockpeek::channel::ChannelError;
use blockpeek::experiment::ExperimentError;
use blockpeek::game::SolveError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub const EXIT_PARSE: u8 = 2;
    pub const EXIT_DOMAIN: u8 = 3;
    pub const EXIT_IO: u8 = 4;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => Self::EXIT_PARSE,
            CliError::Domain(_) => Self::EXIT_DOMAIN,
            CliError::Io { .. } => Self::EXIT_IO,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        CliError::Domain(e.to_string())
    }
}
