//! CLI errors and their exit codes.

use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] cartan_sr::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    /// 2 for invalid input, 3 for numerical or I/O failure.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Compute(cartan_sr::Error::InvalidModulus(_))
            | CliError::Compute(cartan_sr::Error::NonFinite)
            | CliError::Compute(cartan_sr::Error::WrongStratum { .. }) => ExitCode::from(2),
            _ => ExitCode::from(3),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
