//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("cylinder width must be positive")]
    NonPositiveWidth,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
}

/// A general-position violation found while computing crossings.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    #[error("edges {0} and {1} overlap along a segment")]
    Overlap(usize, usize),
    #[error("edges {0} and {1} touch without crossing")]
    Touching(usize, usize),
    #[error("adjacent edges {0} and {1} cross")]
    AdjacentCrossing(usize, usize),
    #[error("edge {edge} passes through vertex {vertex}")]
    EdgeThroughVertex { edge: usize, vertex: usize },
    #[error("edge {0} intersects itself")]
    SelfIntersection(usize),
    #[error("more than two edges meet at one crossing point: {0:?}")]
    TriplePoint(Vec<usize>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("degenerate drawing: {0}")]
    Degenerate(#[from] Degeneracy),
    #[error("expected {expected} vertex positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("vertex {0} lies outside the strip [0, W)")]
    OutsideStrip(usize),
    #[error("vertices {0} and {1} share a position")]
    CoincidentVertices(usize, usize),
    #[error("edge {0} repeats a point or has a zero-length step")]
    RepeatedPoint(usize),
    #[error("edge {0} has a step of exactly half the cylinder width")]
    AmbiguousWrap(usize),
    #[error("planarization is disconnected")]
    Disconnected,
    #[error("invalid drawing file: {0}")]
    Format(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid construction spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("no bound available: {0}")]
    Unavailable(String),
    #[error("coefficients must be positive")]
    NonPositiveCoefficient,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("adjacent edges {0} and {1} cross")]
    AdjacentCrossingPresent(usize, usize),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}
