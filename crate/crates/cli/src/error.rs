use std::path::{Path, PathBuf};

use rmtf::{Error, Step};
use thiserror::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_STEP_I: u8 = 3;
pub const EXIT_STEP_II: u8 = 4;
pub const EXIT_IO: u8 = 5;
pub const EXIT_PARAMS: u8 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("parameter violation: {0}")]
    Params(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    /// Tags a library error with the file it came from.
    pub fn in_file(path: &Path, e: Error) -> Self {
        match e {
            Error::Format(msg) => CliError::Malformed(format!("{}: {msg}", path.display())),
            other => CliError::Lib(other),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Malformed(_) => EXIT_IO,
            CliError::Params(_) => EXIT_PARAMS,
            CliError::Lib(e) => match e {
                Error::Decode(f) => match f.step() {
                    Some(Step::SupportRecovery) => EXIT_STEP_I,
                    // The final H·E = S check runs after step II.
                    Some(Step::CoefficientRecovery) | None => EXIT_STEP_II,
                },
                Error::Inconsistent => EXIT_STEP_II,
                Error::Format(_) | Error::Shape(_) | Error::ContextMismatch | Error::InvalidCoords(_) => EXIT_IO,
                _ => EXIT_PARAMS,
            },
        }
    }
}
