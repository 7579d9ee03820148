use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the two Sylow parts use the same prime {0}")]
    EqualPrimes(u64),
    #[error("{0} is not a prime")]
    NonPrime(u64),
    #[error("exponents must be a non-empty, non-increasing list of positive integers")]
    NotNonIncreasing,
    #[error("group order exceeds 2^31")]
    OrderTooLarge,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("order counts are not realizable by an abelian p-group: {0}")]
    NotRealizable(String),
    #[error("element does not belong to the group: {0}")]
    ShapeMismatch(String),
    #[error("internal mismatch between independent constructions: {0}")]
    InternalMismatch(String),
    #[error("members of one neighborhood class disagree on their kind: {0}")]
    NotAClass(String),
    #[error("no closed-form size exists for a generic u-class")]
    NoFormula,
    #[error("input is not a difference graph of a two-prime abelian group: {0}")]
    NotADifferenceGraph(String),
    #[error("input graph is empty")]
    EmptyInput,
    #[error("graph file line {line}: {msg}")]
    GraphFormat { line: usize, msg: String },
}

impl Error {
    pub(crate) fn not_diff(msg: impl Into<String>) -> Self {
        Error::NotADifferenceGraph(msg.into())
    }
}
