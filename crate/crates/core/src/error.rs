use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {index} is not a permutation of 1..={degree}")]
    NotAPermutation { index: usize, degree: usize },

    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("group is not a p-group (order {order})")]
    NotPGroup { order: usize },

    #[error("isomorphism search exceeded its budget of {budget} node visits")]
    SearchBudgetExceeded { budget: u64 },

    #[error("seed enumeration of {size} vectors exceeds the guard of {guard}")]
    SeedEnumerationTooLarge { size: u128, guard: u128 },

    #[error("rank {rank} of the residue space exceeds the enumeration guard {guard}")]
    RankTooLarge { rank: usize, guard: usize },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("validation failed: {0}")]
    ValidationFailed(String),

    #[error("assertion failed: {0}")]
    AssertionFailed(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
