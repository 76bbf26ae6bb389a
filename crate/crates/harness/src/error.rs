use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numeric(srgbm_core::Error),
    #[error("invalid model input: {0}")]
    Model(srgbm_core::Error),
    #[error("I/O error on {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed table: {0}")]
    Table(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 2 configuration, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Model(_) => 2,
            HarnessError::Numeric(_) => 3,
            HarnessError::Io { .. } | HarnessError::Table(_) => 4,
        }
    }
}

impl From<srgbm_core::Error> for HarnessError {
    fn from(e: srgbm_core::Error) -> Self {
        if e.is_numeric() {
            HarnessError::Numeric(e)
        } else {
            HarnessError::Model(e)
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
