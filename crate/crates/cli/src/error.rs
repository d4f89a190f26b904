use std::io;
use std::path::PathBuf;

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] densop::Error),
}

impl CliError {
    /// 1 for I/O failures, 2 for everything the user can fix in the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => 1,
            _ => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => "io_error",
            CliError::Parse(_) => "parse_error",
            CliError::Usage(_) => "usage_error",
            CliError::Domain(e) => e.code(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.code(), "message": self.to_string() });
        if let CliError::Domain(densop::Error::Validation { invariant, .. }) = self {
            v["invariant"] = json!(invariant);
        }
        v
    }
}

pub type CliResult<T> = Result<T, CliError>;
