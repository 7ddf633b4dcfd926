use thiserror::Error;

/// Command failure, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input: malformed JSON, bad numbers, unknown names.
    #[error("parse error: {0}")]
    Parse(String),
    /// Input that parses but does not fit the command: rank or dimension
    /// mismatches, bad vectors, bad cutoffs, missing files.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Input that violates a mathematical precondition, such as a
    /// quadrupole that is not traceless.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A verification suite ran but some residual exceeded tolerance.
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Argument(_) | CliError::Io(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}

impl From<stf_core::Error> for CliError {
    fn from(e: stf_core::Error) -> Self {
        use stf_core::Error as E;
        match e {
            E::NotTraceless(_) | E::NotSymmetric(_) | E::NotReal(_) | E::NotUnit(_) => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Argument(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
