use std::path::PathBuf;

use plxmin::io::DataError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Data { path: PathBuf, source: DataError },

    #[error("{0}")]
    InsufficientData(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Data { .. } => 2,
            CliError::InsufficientData(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<plxmin::Error> for CliError {
    fn from(e: plxmin::Error) -> Self {
        match e {
            plxmin::Error::InsufficientData(_) | plxmin::Error::InvalidSample(_) => {
                CliError::InsufficientData(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}
