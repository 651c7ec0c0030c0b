//! Rigidity operators of finite, periodic and crystal bar-joint frameworks.
//!
//! The crate is organised by subsystem:
//!
//! * [`framework`] holds graphs, placements, motifs, finite patches, the built-in
//!   catalog and the finite rigidity matrix with its flex and stress spaces.
//! * [`laurent`] implements multivariate Laurent polynomials with complex
//!   coefficients and determinants of matrices of them.
//! * [`symbol`] turns a motif into its matricial symbol function `Φ(z)` and
//!   analyses it on the torus: mode multiplicities, RUM scans, wave flexes,
//!   isostaticity verdicts, inversion structure and symmetry commutation.
//! * [`sparsity`] provides Maxwell counts and `(k, ℓ)` pebble games.
//! * [`deform`] computes nonlinear motions: trapezium strip transmission,
//!   flow-periodic deformations and alternation flexes.
//!
//! Phases on the torus are always given as `s ∈ [0,1)^d` with `z_q = e^{2πi s_q}`.

pub mod deform;
pub mod framework;
pub mod laurent;
pub mod linalg;
pub mod sparsity;
pub mod symbol;

mod error;

pub use error::Error;
pub use framework::catalog::{catalog, CatalogEntry};
pub use framework::{FiniteFramework, FrameworkError, Graph, Motif, MotifEdge, PatchFramework};
pub use laurent::{LaurentPoly, SymbolMatrix};
pub use symbol::SymbolFunction;

/// Convenience alias used across the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
