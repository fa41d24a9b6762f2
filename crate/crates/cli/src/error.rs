use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A failed command, split by the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags or arguments; exit 2.
    Usage(String),
    /// A computation or verification failed; exit 1.
    Failure(String),
    /// Stdout was closed by the reader, e.g. `picalc ... | head`.
    Closed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
            CliError::Closed => EXIT_OK,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
            CliError::Closed => f.write_str("output closed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<picalc_core::Error> for CliError {
    fn from(e: picalc_core::Error) -> Self {
        use picalc_core::Error as E;
        match e {
            E::InvalidFormula(_) | E::Parse(_) | E::UnknownConstant(_) | E::Domain(_) | E::Precision(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Failure(format!("I/O error: {e}"))
    }
}
