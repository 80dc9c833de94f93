use thiserror::Error;

use crate::rootsys::{Family, RootVec};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}{}", hint.as_deref().map(|h| format!(": {h}")).unwrap_or_default())]
    InvalidType {
        family: Family,
        rank: usize,
        hint: Option<String>,
    },

    #[error("dimension mismatch: expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not a root")]
    NotARoot(RootVec),

    #[error("root string of {beta} through {alpha} is undefined (proportional roots)")]
    ProportionalRoots { alpha: RootVec, beta: RootVec },

    #[error("painted node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("painted node has mark {mark}, not 2: {detail}")]
    HeightNotTwo { mark: i64, detail: String },

    #[error("grading level {0} is not one of 0, 1, 2")]
    BadLevel(i64),

    #[error("level {level} has {count} maximal roots, expected exactly one")]
    NotUnique { level: usize, count: usize },

    #[error("weight is not dominant: pairing with {witness} is negative")]
    NotDominant { witness: RootVec },

    #[error("Weyl product is not a positive integer: {0}")]
    NonIntegerResult(String),

    #[error("metric parameters must be positive, got ({x1}, {x2})")]
    NonPositiveMetric { x1: String, x2: String },

    #[error("metric is not critical: {0}")]
    NotCritical(String),

    #[error("{0}")]
    Parse(String),
}
