//! Laurent polynomials with complex coefficients and matrices of them.

mod matrix;
mod poly;
mod text;

pub use matrix::{SymbolMatrix, DET_PRUNE_HADAMARD, DET_PRUNE_REL, DET_ZERO_REL};
pub use poly::{LaurentPoly, PRUNE_ABS};

use thiserror::Error;

/// Per-coefficient tolerance for comparisons after normalisation.
pub const UNIT_EQ_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaurentError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix needs {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("parse error: {0}")]
    Parse(String),
}
