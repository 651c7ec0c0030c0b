//! Finite motions: the trapezium-strip transmission function, flow-periodic
//! deformations of grid-like motifs, and alternation flexes.

mod alternation;
mod flow;
mod strip;

pub use alternation::{alternation_flex, alternation_position, alternation_velocity, AlternationFlex, AlternationKind};
pub use flow::{
    analytic_grid_flow, flow_matrix, flow_periodic_deform, length_drift, skew, DeformationPath, MAX_HALVINGS,
    MAX_NEWTON_ITERATIONS, NEWTON_TOL,
};
pub use strip::{BackwardOrbit, Locking, TrapeziumStrip, BISECTION_TOL, CONTINUATION_STEP, FD_STEP};

use thiserror::Error;

use crate::framework::FrameworkError;

#[derive(Debug, Clone, Error)]
pub enum DeformError {
    #[error("invalid strip geometry: {0}")]
    StripGeometry(String),
    #[error("linkage locks before alpha = {alpha} (last feasible alpha = {last_feasible})")]
    Locked { alpha: f64, last_feasible: f64 },
    #[error("no sign change of the transmission derivative before the feasibility limit {feasible_limit}")]
    NoLocking { feasible_limit: f64 },
    #[error("backward orbit did not pass the critical angle within {steps} steps (last iterate {last})")]
    OrbitTooLong { steps: usize, last: f64 },
    #[error("flow-periodic deformation is implemented for planar motifs only (dimension {0})")]
    Dimension(usize),
    #[error("invalid schedule: {0}")]
    Schedule(String),
    #[error("pinned vertex {pin} out of range 0..{count}")]
    Pin { pin: usize, count: usize },
    #[error("Newton continuation stalled after t = {last_t}")]
    ContinuationStalled { last_t: f64, path: Box<DeformationPath> },
    #[error("alternation angle {0} outside (-pi/2, pi/2)")]
    AngleOutOfRange(f64),
    #[error("unknown alternation framework `{0}` (expected squares or kagome)")]
    UnknownAlternation(String),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}
