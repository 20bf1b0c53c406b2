use thiserror::Error;

use crate::diagnostics::Diagnostics;
use crate::surface::{ArcGroup, ArcId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("surface signature needs n >= 1 and g >= 1, got n = {n}, g = {g}")]
    InvalidSignature { n: usize, g: usize },
}

/// Failures while reading vectors, signs or census documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected {expected} semicolon-separated groups, found {found}")]
    WrongGroupCount { expected: usize, found: usize },
    #[error("group {group} should have {expected} entries, found {found}")]
    WrongGroupLength {
        group: ArcGroup,
        expected: usize,
        found: usize,
    },
    #[error("entry {position} is negative")]
    NegativeEntry { position: ArcId },
    #[error("entry {position} is not an integer: {token:?}")]
    NonInteger { position: ArcId, token: String },
    #[error("vector has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("twist sign {token:?} is not one of +, -, 0")]
    BadSign { token: String },
    #[error("expected {expected} twist signs, found {found}")]
    WrongSignCount { expected: usize, found: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("malformed census: {0}")]
    Census(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e.to_string())
    }
}

/// Top-level error for operations that can fail either structurally or with
/// a list of diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(Diagnostics),
}

impl From<Diagnostics> for Error {
    fn from(d: Diagnostics) -> Self {
        Error::Invalid(d)
    }
}
