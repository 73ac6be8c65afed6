use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0} mismatches against the oracle")]
    Mismatch(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    BadParameter(#[from] topk_core::Error),
    #[error("bad parameter: {0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt snapshot: {0}")]
    SnapshotCorrupt(&'static str),
    #[error("snapshot of kind {found} cannot answer a {query} query")]
    KindMismatch { found: &'static str, query: &'static str },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Parse(_) => 2,
            CliError::BadParameter(_) | CliError::Usage(_) => 3,
            CliError::Io(_) => 4,
            CliError::SnapshotCorrupt(_) => 5,
            CliError::KindMismatch { .. } => 6,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
