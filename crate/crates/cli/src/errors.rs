//! Error classification for the exit-code contract:
//! 0 success, 1 check failure, 2 configuration error, 3 numerical error.

use bottomless_core::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config file, invalid parameter combinations,
    /// unreadable or unwritable paths.
    Config(String),
    /// A numerical routine failed to converge or resolve.
    Numerical(String),
    /// The computation ran but a verification check failed.
    CheckFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical error: {msg}"),
            CliError::CheckFailed => write!(f, "verification checks failed"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::QuadratureNoConvergence { .. }
            | CoreError::DivergentIntegral { .. }
            | CoreError::NoBracket { .. }
            | CoreError::ZeroResolution { .. }
            | CoreError::ResolutionTooCoarse { .. }
            | CoreError::Overflow { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
