//! Library half of the `polysew` binary: file formats, command
//! implementations, pipeline scripts and the sewing benchmark. The
//! binary is a thin clap wrapper over these.

pub mod bench;
pub mod commands;
pub mod format;
pub mod pipeline;

use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced to the user, each mapped to a process exit code:
/// 0 success, 1 verification failure, 2 usage/parse/input trouble,
/// 3 internal invariant breach.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("internal invariant breach: {0}")]
    OracleMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::OracleMismatch(_) => 3,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
