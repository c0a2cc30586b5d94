use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

/// Failure of a command, carrying the file and location it concerns.
#[derive(Debug)]
pub enum CliError {
    /// Reading or writing a file failed.
    Io { path: PathBuf, source: io::Error },
    /// The input is not well-formed text of the expected format.
    Parse {
        file: String,
        location: String,
        message: String,
    },
    /// The input parsed but violates an invariant of the data model.
    Invalid {
        file: String,
        location: String,
        message: String,
    },
    /// A flag or environment value is unusable.
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn parse(file: &str, location: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Parse {
            file: file.to_string(),
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn invalid(file: &str, location: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Invalid {
            file: file.to_string(),
            location: location.into(),
            message: message.into(),
        }
    }

    /// 1 for validation failures, 2 for I/O, parse and usage failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse {
                file,
                location,
                message,
            } => write!(f, "{file}: {location}: parse error: {message}"),
            CliError::Invalid {
                file,
                location,
                message,
            } => write!(f, "{file}: {location}: {message}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;
