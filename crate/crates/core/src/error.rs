use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("capacity exceeded: {what} needs {required}, limit is {limit}")]
    Capacity {
        what: String,
        required: String,
        limit: String,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("metadata mismatch for `{property}`: {message}")]
    Metadata { property: String, message: String },
}

impl Error {
    pub(crate) fn capacity(
        what: impl Into<String>,
        required: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Capacity {
            what: what.into(),
            required: required.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
