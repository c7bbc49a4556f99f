use thiserror::Error;

/// Errors raised by the combinatorial engine. All of them are usage errors:
/// the inputs violate a precondition of the requested operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),

    #[error("weight has {got} entries, expected {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("method `{method}` is not available for the {family} family")]
    MethodFamilyMismatch { method: String, family: String },

    #[error("relation between `{0}` and `{1}` creates a cycle")]
    Cycle(String, String),

    #[error("element index {0} out of range")]
    UnknownElement(usize),

    #[error("unmarked element `{0}` is extremal, the polytope is unbounded")]
    UnboundedElement(String),

    #[error("markings of `{low}` ({low_value}) and `{high}` ({high_value}) are not order preserving")]
    InconsistentMarking {
        low: String,
        low_value: i64,
        high: String,
        high_value: i64,
    },

    #[error("point is not a lattice point of the marked order polytope")]
    NotInOrderPolytope,

    #[error("invalid attachment `{0}`")]
    InvalidAttachment(String),

    #[error("unsupported path: {0}")]
    UnsupportedPath(String),

    #[error("exponent vector does not violate the path inequality")]
    NotViolating,

    #[error("invalid derivation: {0}")]
    InvalidDerivation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
