use num_rational::BigRational;
use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    VertexOutOfRange { id: Vertex, n: usize },

    #[error("expected {expected} per-vertex entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("weight of vertex {0} is not strictly positive")]
    NonPositiveWeight(Vertex),

    #[error("color of vertex {vertex} must be 0 or 1, got {value}")]
    InvalidColor { vertex: Vertex, value: u8 },

    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("scheduled set is not independent: edge ({0}, {1}) lies inside it")]
    NotIndependent(Vertex, Vertex),

    #[error("schedule covers vertex {0} incorrectly for its mode")]
    BadCovering(Vertex),

    #[error("cocycle bound violated on edge ({x}, {y}): ratio {ratio} outside [1 - 1/{d}, 1 + 1/{d}]")]
    CocycleBound {
        x: Vertex,
        y: Vertex,
        ratio: BigRational,
        d: usize,
    },

    #[error("measure is not invariant: ratio {ratio} on edge ({x}, {y})")]
    NotInvariant {
        x: Vertex,
        y: Vertex,
        ratio: BigRational,
    },

    #[error("degree bound must be at least 1")]
    ZeroDegree,

    #[error("epsilon must be strictly positive, got {0}")]
    NonPositiveEpsilon(BigRational),

    #[error("measure is supported on {support} of {n} vertices; a full-support measure is required")]
    PartialSupport { support: usize, n: usize },

    #[error("exhaustive oracle handles at most {max} vertices, graph has {n}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for failures of a checked claim, as opposed to bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::Verification(_) | Error::CocycleBound { .. } | Error::NotInvariant { .. }
        )
    }
}
