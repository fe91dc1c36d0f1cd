use std::path::PathBuf;

use eitfwm_core::EitError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),
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
    #[error("computation failed for {context}: {source}")]
    Compute {
        context: String,
        #[source]
        source: EitError,
    },
    #[error("validation failed: max relative error {max_error:.3e} exceeds {tolerance:.3e}")]
    Validation { max_error: f64, tolerance: f64 },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(vec![msg.into()])
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Read { .. } => 2,
            Self::Write { .. } | Self::Compute { .. } => 3,
            Self::Validation { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
