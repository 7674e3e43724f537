use thiserror::Error;

/// Errors raised by the library. Domain errors are reported to the caller;
/// `Internal` means two independent computations disagreed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must have at least {min} letters, got {got}")]
    AlphabetTooSmall { min: usize, got: usize },

    #[error("letter {letter} is outside an alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("number of roots must be at least 1, got {0}")]
    NoRoots(usize),

    #[error("root {root} is outside 1..={roots}")]
    RootOutOfRange { root: usize, roots: usize },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("prefix code is empty")]
    EmptyCode,

    #[error("not a prefix code: {0} is a prefix of {1}")]
    NotPrefixCode(String, String),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("graph mismatch: {0}")]
    GraphMismatch(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid literal `{literal}`: {msg}")]
    Literal { literal: String, msg: String },

    #[error("not an inverse semigroup with zero: {0}")]
    NotInverse(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("elements are not compatible: {0}")]
    Incompatible(String),

    #[error("not a unit: {0}")]
    NotUnit(String),

    #[error("size limit exceeded: {what} would have {size} elements, limit is {limit}")]
    SizeLimit { what: String, size: usize, limit: usize },

    #[error("counterexample: {0}")]
    Counterexample(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn literal(literal: &str, msg: impl Into<String>) -> Self {
        Error::Literal { literal: literal.to_string(), msg: msg.into() }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
