//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed edge-list input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An argument violated an operation's precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A caller broke an explicit contract (e.g. asked for a connection
    /// profile of a community with no neighbors of the node).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The Iman-Davenport denominator n(k-1) - chi^2 vanished (perfect
    /// ordering of all rows); the statistic is undefined.
    #[error("Iman-Davenport singularity: chi^2 = n(k-1) = {0}")]
    ImanDavenportSingular(f64),

    /// Configuration failed validation.
    #[error("invalid config: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
