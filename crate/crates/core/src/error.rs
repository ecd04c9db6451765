//! Error type shared across the crate.
//!
//! Dimension mismatches between vectors and matrices are programming errors
//! and panic (documented per method); everything that depends on external
//! input — files, configuration, requested problem sizes — reports through
//! [`Error`] so callers can map failures to exit codes.

use thiserror::Error;

/// Failure modes surfaced by fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text in a code, dual-set, or config file.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        /// 1-based line of the offending token.
        line: usize,
        /// 1-based column of the offending token.
        col: usize,
        /// What was expected or found.
        msg: String,
    },

    /// Structurally invalid code or dual set (rank, orthogonality, bounds).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Bad experiment or CLI configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Requested operation exceeds a hard capability limit (e.g. exhaustive
    /// enumeration over 2^k messages with k too large).
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// Rejection sampling produced nothing usable.
    #[error("sampling failed: {0}")]
    Sampling(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for parse errors.
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
