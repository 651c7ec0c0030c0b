//! The symbol function `Φ(z)` of a motif and its analysis on the torus.
//!
//! For a motif edge `e` from vertex `i` (cell 0) to vertex `j` (cell `δ`) with
//! `v_e = p_i − (p_j + Lδ)`, row `e` of `Φ` holds `v_e` in the columns of `i`
//! and `−z̄^δ v_e` in the columns of `j`; a reflexive edge (`i = j`) puts
//! `(1 − z̄^δ) v_e` in the columns of `i`. Columns are ordered vertex-major,
//! axis-minor.
//!
//! With `z = e^{2πis}`, a kernel vector `u` of `Φ(z)` is the cell-0 restriction
//! of the bounded flex `u_{κ,n} = z̄ⁿ u_κ` of the infinite framework.

mod scan;
mod symmetry;
mod verdict;
mod wave;

pub use scan::{rum_scan, rum_scan_tol, ModeSample, ModeScan};
pub use symmetry::{verify_symmetry_commutation, SymmetryElement};
pub use verdict::{inversion_phase_analysis, square_summable_verdict, InversionReport, Verdict, SAMPLE_COUNT, SAMPLE_SEED};
pub use wave::{verify_wave_flex, wave_flex, wave_flex_tol, WaveFlex, WAVE_FLEX_TOL};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::framework::{FrameworkError, Motif};
use crate::laurent::{LaurentError, LaurentPoly, SymbolMatrix};
use crate::linalg::{analyze, DEFAULT_RANK_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("edge {0} has a zero edge vector")]
    ZeroEdgeVector(usize),
    #[error("symbol entry for edge {0} has a non-real coefficient")]
    NonRealCoefficient(usize),
    #[error("phase has {found} coordinates, motif dimension is {expected}")]
    PhaseDimension { expected: usize, found: usize },
    #[error("grid resolution must be at least 2, got {0}")]
    GridTooCoarse(usize),
    #[error("patch radius {radius} is smaller than the largest edge offset {needed}")]
    PatchTooSmall { radius: usize, needed: usize },
    #[error("symbol is {rows}x{cols}; a square symbol is required")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("not a symmetry: {0}")]
    NotASymmetry(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// A motif together with its symbol matrix (`|F_e| × d|F_v|`).
#[derive(Clone, Debug)]
pub struct SymbolFunction {
    motif: Motif,
    matrix: SymbolMatrix,
}

/// Mode multiplicity `μ = d|F_v| − rank Φ(z)` at one phase, with the smallest
/// singular value and an orthonormal kernel basis.
#[derive(Clone, Debug)]
pub struct ModeInfo {
    pub mu: usize,
    pub sigma_min: f64,
    pub kernel: Vec<DVector<Complex64>>,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Builds `Φ` for `motif`.
pub fn build_symbol(motif: &Motif) -> Result<SymbolFunction, SymbolError> {
    let d = motif.dimension();
    let rows = motif.edge_count();
    let cols = d * motif.vertex_count();
    let mut m = SymbolMatrix::zeros(rows, cols, d);
    let scale = motif.lattice().amax();
    for (r, e) in motif.edges().iter().enumerate() {
        let v = motif.edge_vector(r);
        if v.norm() <= 1e-14 * scale {
            return Err(SymbolError::ZeroEdgeVector(r));
        }
        let shift: Vec<i32> = e.offset.iter().map(|&o| -(o as i32)).collect();
        for q in 0..d {
            let vq = LaurentPoly::constant(d, real(v[q]));
            let far = LaurentPoly::monomial(real(-v[q]), shift.clone());
            if e.is_reflexive() {
                m.set(r, d * e.i + q, &vq + &far)?;
            } else {
                m.set(r, d * e.i + q, vq)?;
                m.set(r, d * e.j + q, far)?;
            }
        }
        for c in 0..cols {
            if !m.get(r, c).has_real_coefficients(0.0) {
                return Err(SymbolError::NonRealCoefficient(r));
            }
        }
    }
    Ok(SymbolFunction { motif: motif.clone(), matrix: m })
}

impl SymbolFunction {
    pub fn motif(&self) -> &Motif {
        &self.motif
    }

    pub fn matrix(&self) -> &SymbolMatrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.motif.dimension()
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }

    /// `(vertex, axis)` for every column.
    pub fn column_labels(&self) -> Vec<(usize, usize)> {
        let d = self.dimension();
        (0..self.cols()).map(|c| (c / d, c % d)).collect()
    }

    fn check_phase(&self, s: &[f64]) -> Result<(), SymbolError> {
        if s.len() != self.dimension() {
            return Err(SymbolError::PhaseDimension { expected: self.dimension(), found: s.len() });
        }
        Ok(())
    }

    /// `Φ(e^{2πis})`.
    pub fn evaluate(&self, s: &[f64]) -> Result<DMatrix<Complex64>, SymbolError> {
        self.check_phase(s)?;
        Ok(self.matrix.eval_angles(s)?)
    }

    /// The motif rigidity matrix `Φ(1, …, 1)`, which is real.
    pub fn motif_rigidity_matrix(&self) -> DMatrix<f64> {
        self.evaluate(&vec![0.0; self.dimension()]).expect("dimension matches").map(|c| c.re)
    }

    pub fn mode_multiplicity(&self, s: &[f64]) -> Result<ModeInfo, SymbolError> {
        self.mode_multiplicity_tol(s, DEFAULT_RANK_TOL)
    }

    pub fn mode_multiplicity_tol(&self, s: &[f64], rel_tol: f64) -> Result<ModeInfo, SymbolError> {
        let a = analyze(&self.evaluate(s)?, rel_tol);
        Ok(ModeInfo { mu: self.cols() - a.rank, sigma_min: a.sigma_min(), kernel: a.kernel })
    }

    /// Exact `det Φ` as a Laurent polynomial.
    pub fn determinant(&self) -> Result<LaurentPoly, SymbolError> {
        if !self.is_square() {
            return Err(SymbolError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        Ok(self.matrix.det_interpolate()?)
    }
}
