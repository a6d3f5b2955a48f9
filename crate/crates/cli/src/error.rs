use std::path::{Path, PathBuf};

use thiserror::Error;

/// Anything that stops a command before it can produce a report. Maps to
/// exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] slring::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
