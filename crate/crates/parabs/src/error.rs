//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("column {column:?} required by the column map is not in the header")]
    MissingColumn { column: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed profile file {path}: {message}")]
    Profile { path: PathBuf, message: String },

    #[error("tmx parse error at line {line}: {message}")]
    TmxParse { line: usize, message: String },

    #[error("store error: {0}")]
    Store(#[from] rusqlite::Error),

    #[error("pair references unknown document id {0:?}")]
    UnknownDocId(String),

    #[error("document {doc_id} has {sentences} sentences on one side, above the chunk limit {limit}")]
    DocumentTooLarge {
        doc_id: String,
        sentences: usize,
        limit: usize,
    },

    #[error("annotation session already active (lock file {0} exists)")]
    SessionLocked(PathBuf),

    #[error("[{stage}] {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
