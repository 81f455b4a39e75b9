use thiserror::Error;

use crate::trail::{StructureError, TrailViolation};

/// Why an exhaustive search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CapKind {
    Edges { limit: usize, actual: usize },
    AuxVertices { limit: usize, actual: usize },
    SearchNodes { limit: u64 },
    Time { limit_ms: u128 },
}

impl std::fmt::Display for CapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapKind::Edges { limit, actual } => write!(f, "{actual} edges exceeds the limit of {limit}"),
            CapKind::AuxVertices { limit, actual } => {
                write!(f, "{actual} vertices exceeds the limit of {limit}")
            }
            CapKind::SearchNodes { limit } => write!(f, "more than {limit} search nodes"),
            CapKind::Time { limit_ms } => write!(f, "time budget of {limit_ms} ms exhausted"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("malformed trail: {0}")]
    Structure(#[from] StructureError),
    #[error("not a closed dynamic H-trail: {0}")]
    InvalidTrail(TrailViolation),
    #[error("expected a closed trail, got an open one")]
    OpenTrail,
    #[error("auxiliary path parameter n = {0} is invalid, need n >= 2")]
    InvalidPathLength(usize),
    #[error("not an alternating cycle: {0}")]
    NotAlternating(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search cap exceeded: {0}")]
    CapExceeded(CapKind),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
