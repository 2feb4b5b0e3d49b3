use std::path::PathBuf;

/// Failures of the front end, each mapped to a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Syntax { path: String, line: usize, msg: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Numeric(#[from] quartic_core::Error),
}

impl CliError {
    /// 2 for configuration and usage errors, 3 for numeric or domain
    /// errors, 1 for failures writing output.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::MissingKey(_) | CliError::Usage(_) | CliError::Read { .. } => 2,
            CliError::Numeric(_) => 3,
            CliError::Write { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
