use thiserror::Error;

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid job: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Core(#[from] kummer_core::Error),
    #[error("cannot read {path}: {source}")]
    Input { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => EXIT_INTERNAL,
            CliError::Output { .. } | CliError::Csv(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
