use std::fmt;

use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("monomial `{monomial}` is not multilinear in the variables {vars}")]
    Multilinearity { monomial: String, vars: String },

    #[error("pole: {0}")]
    Pole(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("form {form} is not a cocycle")]
    Cocycle { form: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown {kind} `{name}`; available: {available}")]
    UnknownName {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("{file}: {msg}")]
    Catalog { file: String, msg: String },

    #[error("automorphism shape fails at sample {sample}: {msg}")]
    BadShape { sample: usize, msg: String },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl fmt::Display) -> Self {
        Error::Parse {
            pos,
            msg: msg.to_string(),
        }
    }

    pub(crate) fn catalog(file: impl fmt::Display, msg: impl fmt::Display) -> Self {
        Error::Catalog {
            file: file.to_string(),
            msg: msg.to_string(),
        }
    }
}
