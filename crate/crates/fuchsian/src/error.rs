use fuchsian_core::Error;
use serde_json::Value;
use thiserror::Error;

/// Command failures, split by exit code: 1 for bad input, 2 for numeric
/// failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}:{line}:{column}: {message}")]
    Json { path: String, line: usize, column: usize, message: String },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{0}")]
    Validation(String),

    #[error("{message}")]
    Numeric { message: String, report: Option<Value> },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric { .. } => 2,
            _ => 1,
        }
    }

    pub fn report(&self) -> Option<&Value> {
        match self {
            CliError::Numeric { report, .. } => report.as_ref(),
            _ => None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NonConvergence(r) | Error::DomainEscape(r) => {
                CliError::Numeric { message, report: Some(crate::json::solver(&r)) }
            }
            Error::CutoffOverflow { .. }
            | Error::BallOverflow { .. }
            | Error::InsufficientRadius { .. }
            | Error::PerturbationFailed { .. }
            | Error::NotPositiveDefinite => CliError::Numeric { message, report: None },
            _ => CliError::Validation(message),
        }
    }
}
