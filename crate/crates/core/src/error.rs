use thiserror::Error;

use crate::severi::KeyError;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid key: {0}")]
    InvalidKey(#[from] KeyError),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two computations disagreed on a value that must be unique.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("cache corruption in {path}: {reason}")]
    Corruption { path: String, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
