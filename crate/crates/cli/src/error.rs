use std::fmt;
use std::process::ExitCode;

/// Exit-code contract: usage and IO problems exit 1, domain rejections
/// (unsatisfied claim, failed verification, tampered data) exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Domain(String),
}

impl CliError {
    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(1),
            CliError::Domain(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "error: {e:#}"),
            CliError::Domain(m) => write!(f, "rejected: {m}"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
