use thiserror::Error;

/// Errors raised by the fitting, sampling and benchmarking routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Not enough observations (or distinct values) to carry out the fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A sample violated its construction invariants.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// A configuration value is out of range. `key` names the offending field.
    #[error("invalid configuration `{key}`: {reason}")]
    InvalidConfig { key: String, reason: String },

    /// Function arguments do not fit together (e.g. length mismatch).
    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(key: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}
