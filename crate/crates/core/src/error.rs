use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("file {0} is not valid UTF-8")]
    NotUtf8(PathBuf),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("no metadata row for document {0:?}")]
    MissingMetadata(String),

    #[error("duplicate doc_id {0:?} in metadata")]
    DuplicateDocId(String),

    #[error("malformed input {path}: {message}")]
    Malformed { path: PathBuf, message: String },

    #[error("unknown metadata variable {0:?}")]
    UnknownVariable(String),

    #[error("empty value for variable {variable:?} in documents {ids:?}")]
    EmptyGroupValue { variable: String, ids: Vec<String> },

    #[error("term {term:?} not in vocabulary; nearest matches: {}", suggestions.join(", "))]
    UnknownTerm {
        term: String,
        suggestions: Vec<String>,
    },

    #[error("invalid contingency counts: {0}")]
    InvalidCounts(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("number of topics k={k} exceeds vocabulary size V={v}")]
    TooManyTopics { k: usize, v: usize },

    #[error("numerical failure at EM iteration {iteration}")]
    NumericalFailure { iteration: usize },

    #[error("fit failed for k={k}: {source}")]
    FitFailed {
        k: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Malformed {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the command line front end.
    ///
    /// 1 usage, 2 data error, 3 domain error, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) => 1,
            Error::Io { .. }
            | Error::NotUtf8(_)
            | Error::EmptyCorpus
            | Error::MissingMetadata(_)
            | Error::DuplicateDocId(_)
            | Error::Malformed { .. }
            | Error::UnknownVariable(_)
            | Error::EmptyGroupValue { .. }
            | Error::Serialization(_) => 2,
            Error::UnknownTerm { .. }
            | Error::InvalidCounts(_)
            | Error::DimensionMismatch(_)
            | Error::TooManyTopics { .. } => 3,
            Error::NumericalFailure { .. } => 4,
            Error::FitFailed { source, .. } => source.exit_code(),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
