use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position set has {positions} elements but {diffs} differences need {}", 2 * diffs)]
    SizeMismatch { positions: usize, diffs: usize },

    #[error("differences must be positive integers")]
    ZeroDifference,

    #[error("positions must be positive integers")]
    ZeroPosition,

    #[error("position {0} occurs more than once")]
    DuplicatePosition(u32),

    #[error("pair ({0}, {1}) does not have two distinct positions")]
    DegeneratePair(u32, u32),

    #[error("pairing is not valid for the given positions and differences")]
    InvalidPairing,

    #[error("operation needs the contiguous positions 1..2n")]
    NotContiguous,

    #[error("expected a set of distinct differences, got a multiset")]
    NotASet,

    #[error("{what} = {value} is outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("difference multiset is not extremal (sum {sum} != {square})")]
    NotExtremal { sum: u64, square: u64 },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("order {order} exceeds the {what} ceiling of {ceiling}")]
    ResourceLimit {
        what: String,
        order: usize,
        ceiling: usize,
    },

    #[error("the search engine supports at most {max} positions, got {got}")]
    Capacity { got: usize, max: usize },

    #[error("search cancelled")]
    Cancelled,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
