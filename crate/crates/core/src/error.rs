use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("point {index} at {point} exceeds the coordinate bound")]
    CoordinateOutOfRange { index: usize, point: Point },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("points {0:?} are collinear")]
    Collinear([usize; 3]),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("edge endpoints coincide at {0}")]
    LoopEdge(usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("point {0} is not a hull vertex of the sorted set")]
    CenterNotOnHull(usize),
    #[error("center {0} also appears in the subset")]
    CenterInSubset(usize),
    #[error("point set is not in convex position")]
    NotConvex,
    #[error("could not reach general position after {0} attempts")]
    GenerationFailed(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a tree on {k} vertices")]
    VertexOutOfRange { vertex: usize, k: usize },
    #[error("expected {expected} edges, got {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("size {got} outside the supported range {min}..={max}")]
    UnsupportedSize { got: usize, min: usize, max: usize },
    #[error("children order for vertex {0} is not a permutation of its children")]
    BadChildOrder(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("tree has {tree} vertices but the point set has {points}")]
    SizeMismatch { tree: usize, points: usize },
    #[error("need at least {needed} points, got {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("wedge for child {child} of vertex {vertex} is not convex")]
    NonConvexWedge { vertex: usize, child: usize },
    #[error("override point {point} for vertex {vertex} lies outside its cell")]
    PointOutsideCell { vertex: usize, point: usize },
    #[error("embedding is invalid: {0}")]
    Invalid(String),
    /// A construction that should always succeed did not.
    #[error("construction defect: {0}")]
    Defect(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForbidError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("need at least {needed} points, got {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("k = {k} outside the supported range for n = {n}")]
    BadK { n: usize, k: usize },
    #[error("hull position {0} out of range")]
    BadPosition(usize),
    #[error("pairs around middles {0:?} share edges")]
    OverlappingPairs([usize; 3]),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("tree has {tree} vertices but only {points} points are available")]
    TreeTooLarge { tree: usize, points: usize },
    #[error("search budget must be positive")]
    ZeroBudget,
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("instance outside the supported range: {0}")]
    OutOfRange(String),
    #[error("vertex order is not a connected ordering of the tree")]
    BadVertexOrder,
}
