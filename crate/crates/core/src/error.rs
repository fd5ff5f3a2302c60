use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartanMatrix(String),

    #[error("cannot parse Cartan type {input:?}: {reason}")]
    InvalidCartanType { input: String, reason: String },

    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },

    #[error("{0:?} is not a root of this root system")]
    NotARoot(Vec<i32>),

    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: u64, cap: u64 },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),

    #[error("linear map does not preserve the bracket of basis pair ({0}, {1})")]
    NotAutomorphism(usize, usize),

    #[error("torus character value at position {0} is zero")]
    ZeroCharacterValue(usize),

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("span is not closed under the bracket: [v{0}, v{1}] leaves the span")]
    NotASubalgebra(usize, usize),

    #[error("matrix is not a skew 1-cocycle on the given subalgebra")]
    InvalidCocycle,

    #[error("subalgebra is not stable under the Cartan subalgebra")]
    NotHStable,

    #[error("{root_type}: found {found} abelian ideals, expected 2^{rank} = {expected}")]
    PetersonMismatch {
        root_type: String,
        rank: usize,
        found: usize,
        expected: usize,
    },

    #[error("{root:?} + {by:?} is a positive-root translate outside the set; not an upper set")]
    NotAnIdeal { root: Vec<i32>, by: Vec<i32> },

    #[error("{0:?} is not a positive root")]
    NotPositive(Vec<i32>),

    #[error("runtime contract violated: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
