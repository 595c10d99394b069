use std::fmt;

use dbaug_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const IO: i32 = 4;
}

/// A command failure carrying the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: exit::PARSE,
            message: message.into(),
        }
    }

    pub fn io(path: &std::path::Path, err: impl fmt::Display) -> Self {
        Self {
            code: exit::IO,
            message: format!("{}: {err}", path.display()),
        }
    }

    /// Prefixes the message with the file it concerns.
    pub fn in_file(mut self, path: &std::path::Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Io(_) => exit::IO,
            Error::InvalidPolicy(_) | Error::InvalidWeights(_) | Error::IndexOutOfRange { .. } => {
                exit::USAGE
            }
            Error::EmptySeries
            | Error::NonFinite { .. }
            | Error::EmptySubset
            | Error::EmptyDataset
            | Error::UnknownLabel(_)
            | Error::Parse { .. }
            | Error::ShapeMismatch(_)
            | Error::InvalidProbabilities(_) => exit::PARSE,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;
