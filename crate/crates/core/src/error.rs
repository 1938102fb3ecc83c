use thiserror::Error;

use crate::compositions::Composition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} with parameter {value} exceeds the enumeration guard {guard}")]
    GuardExceeded {
        what: &'static str,
        value: u64,
        guard: u64,
    },

    #[error("negative part {0} in multinomial")]
    NegativePart(i64),

    #[error("{0} is not a unit composition")]
    NotUnit(Composition),

    #[error("composition {word} of length {len} and sum {sum} is inconsistent with outdegree {outdegree}")]
    OutdegreeMismatch {
        word: Composition,
        len: usize,
        sum: u64,
        outdegree: u64,
    },

    #[error("mark {mark} is out of range for a tree with {vertices} vertices")]
    MarkOutOfRange { mark: usize, vertices: usize },

    #[error("arity must be at least 1")]
    ZeroArity,

    #[error("plane tree is not a complete {arity}-ary tree: {reason}")]
    NotComplete { arity: usize, reason: String },

    #[error("condition (i) fails for k={k}, n={n}: {reason}")]
    ConditionCounts { k: usize, n: u64, reason: String },

    #[error("condition (ii) fails for k={k}, i={i}: {reason}")]
    ConditionUnits { k: usize, i: u64, reason: String },

    #[error("subset pair out of range: {0}")]
    SubsetOutOfRange(String),

    #[error("series truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series truncated at order {order} cannot provide coefficient {needed}")]
    TruncationTooSmall { order: usize, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
