use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A malformed input record. `record` is the 0-based data record index.
    #[error("format error at record {record}: {message}")]
    Format { record: usize, message: String },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    /// A strategy was invoked without the inputs it requires.
    #[error("contract error: {0}")]
    Contract(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(record: usize, message: impl Into<String>) -> Self {
        Error::Format {
            record,
            message: message.into(),
        }
    }
}
