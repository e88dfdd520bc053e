use thiserror::Error;

use crate::shift::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} is not a vertex of G_{{{n_points},2}}")]
    InvalidVertex { vertex: Vertex, n_points: u32 },

    #[error("sequence of length {len} is too short for a pair ending at {needed}")]
    InvalidLength { len: usize, needed: u32 },

    #[error("sequence is not good: entry {} is contained in entry {}", .violation.x, .violation.y)]
    NotGood { violation: Vertex },

    #[error("invalid coloring: {reason}")]
    InvalidColoring { reason: String },

    #[error("construction failed for {vertex}: {reason}")]
    ConstructionFailed { vertex: Vertex, reason: String },

    #[error("search inconclusive at k = {k} after {nodes} nodes")]
    Inconclusive { k: u32, nodes: u64 },

    #[error("inconsistent solver state: {0}")]
    Inconsistent(String),

    #[error("engines disagree on {k}-colorability: sequence search says {sequence}, branch and bound says {branch_and_bound}")]
    EngineDisagreement {
        k: u32,
        sequence: bool,
        branch_and_bound: bool,
    },
}
