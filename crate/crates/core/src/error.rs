use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed MR at byte {offset}: {message}")]
    MrParse { offset: usize, message: String },

    #[error("row {row}{}: {message}", column.as_ref().map(|c| format!(", column `{c}`")).unwrap_or_default())]
    Row {
        row: usize,
        column: Option<String>,
        message: String,
    },

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}:{line}: {message}")]
    Resource {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{what} is required but was not supplied (pass {flag})")]
    MissingResource { what: &'static str, flag: &'static str },

    #[error("reference list is empty")]
    NoReferences,

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn row(row: usize, column: Option<&str>, message: impl Into<String>) -> Self {
        Error::Row {
            row,
            column: column.map(str::to_owned),
            message: message.into(),
        }
    }
}
