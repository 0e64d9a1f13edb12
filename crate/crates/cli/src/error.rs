use quadlie_core::Error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    /// A computed result contradicts a theorem hypothesis check.
    #[error("finding: {0}")]
    Finding(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn from_core(e: Error) -> Self {
        match e {
            Error::TheoremViolation(msg) => CliError::Finding(msg),
            other => CliError::Validation(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Finding(_) => 2,
            _ => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::from_core(e)
    }
}
