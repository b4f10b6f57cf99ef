use alrep::Error;
use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("{0} integrity problem(s) found")]
    Embedding(usize),

    #[error("{0} cell(s) failed, see status.json")]
    Incomplete(usize),
}

impl CliError {
    /// 1 configuration, 2 data, 3 runtime.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Manifest(_) => 1,
            CliError::Embedding(_) => 2,
            CliError::Incomplete(_) => 3,
            CliError::Core(e) => match e {
                Error::Argument(_) => 1,
                Error::Io { .. }
                | Error::Format { .. }
                | Error::Dataset(_)
                | Error::Alignment(_)
                | Error::Integrity(_) => 2,
                Error::Training(_) | Error::Contract(_) => 3,
            },
        }
    }
}
