use alloc::string::String;
use alloc::vec::Vec;

/// Errors reported by the combinatorics engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("letter values start at 1")]
    ZeroLetter,

    #[error("parts must be strictly decreasing positive integers, got {0:?}")]
    NotStrict(Vec<usize>),

    #[error("inner partition {inner:?} is not contained in outer partition {outer:?}")]
    NotContained { outer: Vec<usize>, inner: Vec<usize> },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("cells do not match the shape")]
    ShapeMismatch,

    #[error("marker position {0} is out of range")]
    MarkerOutOfRange(usize),

    #[error("size mismatch: |gamma^c| - |alpha| = {skew}, but |beta| + 1 = {expected}")]
    SizeMismatch { skew: usize, expected: usize },

    #[error("precondition failed: {0}")]
    Precondition(&'static str),

    #[error("unsupported input: {0}")]
    Unsupported(&'static str),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
