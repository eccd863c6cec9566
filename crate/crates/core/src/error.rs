use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("invalid component signature: {0}")]
    InvalidSignature(String),

    #[error("invalid branch tuple: {0}")]
    InvalidBranchTuple(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-integral genus on block {block:?}")]
    NonIntegralGenus { block: Vec<usize> },

    #[error("negative genus on block {block:?}")]
    NegativeGenus { block: Vec<usize> },

    #[error("partitions {left} and {right} are not representable with disjoint support in degree {d}")]
    NotRepresentable { left: String, right: String, d: usize },

    #[error("cannot stabilize from degree {from} down to {to}")]
    StabilizeDown { from: usize, to: usize },

    #[error("degree {d} exceeds configured maximum {max}")]
    DegreeTooLarge { d: usize, max: usize },

    #[error("generator index {k} out of range for degree {d}")]
    GeneratorOutOfRange { k: usize, d: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("non-integral factorization count {0}")]
    NonIntegralCount(String),

    #[error("cache error: {0}")]
    Cache(String),
}
