use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` already present")]
    VariableCollision(String),
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("width mismatch: expected {expected}, got {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("not concise: {0}")]
    NotConcise(String),
    #[error("invalid operator list: {0}")]
    InvalidOverride(String),
    #[error("size guard exceeded: {what} needs {needed}, limit {limit}")]
    Guard {
        what: String,
        needed: String,
        limit: String,
    },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("multiplication table is not symmetric at ({0}, {1})")]
    AsymmetricTable(usize, usize),
    #[error("invalid blocking: {0}")]
    InvalidBlocking(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("tensor is not tight for the given blocking")]
    NotTight,
    #[error("N times a block probability is not an integer: {0}")]
    NonIntegerCount(String),
    #[error("marginals differ: {0}")]
    MarginalsDiffer(String),
    #[error("invalid degeneration: block {0} has negative weight")]
    NegativeWeight(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid format: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn guard(what: &str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Guard {
            what: what.to_string(),
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
