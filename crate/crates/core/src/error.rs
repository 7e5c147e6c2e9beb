use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadVertex { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    DisconnectedInput,

    #[error("graph is not 2-connected")]
    NotTwoConnected,

    #[error("rotation system is invalid: {0}")]
    BadRotation(String),

    #[error("rotation system does not describe a plane drawing (Euler relation fails)")]
    NotPlanarRotation,

    #[error("graph is not planar")]
    Nonplanar(Box<Graph>),

    #[error("vertex sets differ ({0} vs {1} vertices)")]
    VertexMismatch(usize, usize),

    #[error("component vertices do not share one face of the restricted drawing")]
    SplitAcrossFaces,

    #[error("graph is not a partial 3-tree")]
    NotPartial3Tree,

    #[error("need at least 3 vertices, got {0}")]
    TooSmall(usize),

    #[error("input too large: {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("order is not a permutation of the vertex set")]
    NotPermutation,

    #[error("{0:?} is not a triangle of the graph")]
    NotATriangle([usize; 3]),

    #[error("graph is not a 3-tree")]
    NotAThreeTree,

    #[error("separator does not split the graph")]
    NotSeparating,

    #[error("vertex {0} is not an articulation vertex")]
    NotArticulation(usize),

    #[error("{{{0}, {1}}} is not a 2-cut")]
    NotTwoCut(usize, usize),

    #[error("internal: separator around vertex {0} leaves a K3,3-like configuration")]
    InternalK33(usize),

    #[error("no face satisfies the anchor requirement")]
    NoSuchFace,

    #[error("anchor does not lie on the outer face boundary")]
    AnchorNotOnOuterFace,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("output is not a plane triangulation")]
    NotTriangulation,

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
