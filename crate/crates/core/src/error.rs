use thiserror::Error;

/// Errors raised by the library. Every variant is either a usage error
/// (malformed input, contract precondition not met by the caller) or a
/// domain error (the mathematics refuses the request).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("variable count mismatch: {left} vs {right}")]
    MismatchedVars { left: usize, right: usize },

    #[error("total degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("letter {letter} out of range for n = {n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("word {word} is not reduced")]
    NotReduced { word: String },

    #[error("length {length} exceeds enumeration bound {bound}")]
    BoundExceeded { length: usize, bound: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("polynomial is not in the ideal J_{n}; offending indices: {offending}")]
    NotInIdeal { n: usize, offending: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("requires Bott-Chern input {component}")]
    MissingBottChern { component: String },

    #[error("invalid Bott-Chern plugin: {0}")]
    InvalidPlugin(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::MismatchedVars { .. } => "mismatched_vars",
            Error::DegreeCap { .. } => "degree_cap",
            Error::SizeMismatch(..) => "size_mismatch",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::LetterOutOfRange { .. } => "letter_out_of_range",
            Error::NotReduced { .. } => "not_reduced",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::InvalidMatrix(_) => "invalid_matrix",
            Error::NotInIdeal { .. } => "not_in_ideal",
            Error::Consistency(_) => "consistency",
            Error::MissingBottChern { .. } => "missing_bott_chern",
            Error::InvalidPlugin(_) => "invalid_plugin",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::Cache(_) => "cache",
        }
    }

    /// True for errors caused by malformed caller input rather than by the
    /// mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::MismatchedVars { .. }
                | Error::SizeMismatch(..)
                | Error::InvalidPermutation(_)
                | Error::LetterOutOfRange { .. }
                | Error::InvalidPartition(_)
                | Error::InvalidMatrix(_)
                | Error::InvalidPlugin(_)
                | Error::DegreeMismatch { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
