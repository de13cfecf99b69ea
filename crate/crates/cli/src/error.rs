use dicrit_core::ErrorFamily;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division is only allowed at the top level (position {0})")]
    DivisionNotTopLevel(usize),
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] dicrit_core::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        CliError::Parse { pos, msg: msg.into() }
    }

    /// Process exit status: 2 usage or parse, 3 arithmetic, 4 input, 5 budget, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::DivisionNotTopLevel(_) | CliError::Usage(_) => 2,
            CliError::Input(_) => 4,
            CliError::Engine(e) => match e.family() {
                ErrorFamily::Arithmetic => 3,
                ErrorFamily::Input => 4,
                ErrorFamily::Budget => 5,
            },
            CliError::Internal(_) => 1,
        }
    }

    /// Short machine name of the error family.
    pub fn family(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "arithmetic",
            4 => "input",
            5 => "budget",
            _ => "internal",
        }
    }
}
