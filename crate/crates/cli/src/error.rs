use std::fmt;

use nongauss_core::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Io(String),
    Usage(String),
    Mismatch(String),
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Degenerate(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Mismatch(m) => write!(f, "oracle mismatch: {m}"),
            CliError::Degenerate(m) => write!(f, "degenerate configuration: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateConditioning | Error::NumericallyDegenerate(_) => CliError::Degenerate(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
