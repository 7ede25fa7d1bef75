use std::fmt;
use std::path::PathBuf;

/// Exit status for input and usage errors.
pub const EXIT_INPUT: u8 = 2;
/// Exit status for a verification failure.
pub const EXIT_FAILURE: u8 = 1;

#[derive(Debug)]
pub enum CliError {
    /// A point-set file line that is not two integers.
    Parse {
        line: usize,
        message: String,
    },
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Core(khole_core::Error),
    UnknownSuite(String),
    Usage(String),
    /// A check ran to completion and found a violation.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => EXIT_FAILURE,
            CliError::Core(e) if is_invariant_break(e) => EXIT_FAILURE,
            _ => EXIT_INPUT,
        }
    }
}

fn is_invariant_break(e: &khole_core::Error) -> bool {
    matches!(
        e,
        khole_core::Error::NoCandidate { .. } | khole_core::Error::NoGoodBlock { .. }
    )
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, message } => write!(f, "line {line}: {message}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::UnknownSuite(name) => write!(f, "unknown suite `{name}`"),
            CliError::Usage(msg) | CliError::Failure(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<khole_core::Error> for CliError {
    fn from(e: khole_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
