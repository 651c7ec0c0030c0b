//! Graphs, placements, motifs and finite rigidity matrices.

pub mod catalog;
mod finite;
mod graph;
pub mod io;
mod motif;
mod patch;

pub use finite::FiniteFramework;
pub use graph::Graph;
pub use motif::{Motif, MotifEdge};
pub use patch::PatchFramework;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameworkError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} repeats the pair {{{i}, {j}}}")]
    DuplicateEdge { edge: usize, i: usize, j: usize },
    #[error("edge {edge} references vertex {vertex} but only {count} vertices exist")]
    VertexOutOfRange { edge: usize, vertex: usize, count: usize },
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("placement has {found} points for {expected} vertices")]
    PlacementLength { expected: usize, found: usize },
    #[error("properness violated: edge {edge} has zero length")]
    ZeroLengthEdge { edge: usize },
    #[error("non-finite coordinate in placement or lattice")]
    NonFinite,
    #[error("degenerate lattice basis (determinant {0:e})")]
    DegenerateLattice(f64),
    #[error("reflexive edge {edge} at vertex {vertex} needs a nonzero offset")]
    ReflexiveZeroOffset { edge: usize, vertex: usize },
    #[error("fractional coordinate {value} of vertex {vertex} lies outside [0, 1)")]
    FractionalOutOfRange { vertex: usize, value: f64 },
    #[error("motif does not generate a connected framework: {0}")]
    Disconnected(String),
    #[error("motif has no vertices")]
    EmptyMotif,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("catalog entry `{0}` requires a seed")]
    MissingSeed(String),
    #[error("`{0}` is a {1}, not a {2}")]
    WrongKind(String, &'static str, &'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
