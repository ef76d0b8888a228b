use std::path::PathBuf;

use skylink::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad scenario file or inconsistent command-line values.
    #[error("{0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] ModelError),
}

impl CliError {
    /// 1 for configuration and usage problems, 2 for runtime and I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Read { .. } => 1,
            CliError::Model(ModelError::Config(_)) | CliError::Model(ModelError::Domain { .. }) => {
                1
            }
            CliError::Write { .. } | CliError::Model(_) => 2,
        }
    }

    pub(crate) fn write(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Write {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
