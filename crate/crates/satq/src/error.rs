use std::io;

use thiserror::Error;

/// Errors surfaced by any layer of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed runtime input (length mismatches, bad indices, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Malformed file content (DIMACS, QUBO coordinate format).
    #[error("format error: {0}")]
    Format(String),

    /// Invalid configuration values.
    #[error("configuration error: {0}")]
    Config(String),

    /// A caller violated an operation's contract.
    #[error("contract error: {0}")]
    Contract(String),

    /// I/O failure, annotated with the path involved.
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    /// Wraps an I/O error with path context.
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}
