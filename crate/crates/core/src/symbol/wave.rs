use std::f64::consts::TAU;

use nalgebra::DVector;
use num_complex::Complex64;

use super::{SymbolError, SymbolFunction};
use crate::framework::{Motif, PatchFramework};
use crate::linalg::DEFAULT_RANK_TOL;

/// Acceptance threshold for [`verify_wave_flex`] residuals.
pub const WAVE_FLEX_TOL: f64 = 1e-8;

/// A kernel vector of `Φ(e^{2πis})`, i.e. the cell-0 data of a bounded flex
/// that changes by the phase factor `e^{−2πi⟨s,n⟩}` from cell to cell.
#[derive(Clone, Debug)]
pub struct WaveFlex {
    pub phase: Vec<f64>,
    /// Length `d|F_v|`, vertex-major.
    pub motif_vector: DVector<Complex64>,
}

impl WaveFlex {
    /// Displacement of vertex `kappa` in cell `n`.
    pub fn displacement(&self, kappa: usize, n: &[i64], d: usize) -> DVector<Complex64> {
        let angle: f64 = self.phase.iter().zip(n).map(|(s, &k)| s * k as f64).sum();
        let factor = Complex64::from_polar(1.0, -TAU * angle);
        self.motif_vector.rows(d * kappa, d).map(|c| c * factor)
    }
}

/// One wave flex per kernel basis vector of `Φ(e^{2πis})`; empty where `μ = 0`.
pub fn wave_flex(sf: &SymbolFunction, s: &[f64]) -> Result<Vec<WaveFlex>, SymbolError> {
    wave_flex_tol(sf, s, DEFAULT_RANK_TOL)
}

/// [`wave_flex`] with an explicit relative rank tolerance.
pub fn wave_flex_tol(sf: &SymbolFunction, s: &[f64], rel_tol: f64) -> Result<Vec<WaveFlex>, SymbolError> {
    let info = sf.mode_multiplicity_tol(s, rel_tol)?;
    Ok(info
        .kernel
        .into_iter()
        .map(|v| WaveFlex { phase: s.to_vec(), motif_vector: v })
        .collect())
}

/// Extends `wf` over the patch of radius `radius` and returns the largest edge
/// residual `|⟨p_a − p_b, u_a − u_b⟩|`, relative to
/// `max |p_a − p_b| · max |u_κ|`.
pub fn verify_wave_flex(wf: &WaveFlex, motif: &Motif, radius: usize) -> Result<f64, SymbolError> {
    let d = motif.dimension();
    let expected = d * motif.vertex_count();
    if wf.motif_vector.len() != expected {
        return Err(SymbolError::VectorLength { expected, found: wf.motif_vector.len() });
    }
    if wf.phase.len() != d {
        return Err(SymbolError::PhaseDimension { expected: d, found: wf.phase.len() });
    }
    let needed = motif.max_offset() as usize;
    if radius < needed {
        return Err(SymbolError::PatchTooSmall { radius, needed });
    }
    let patch = PatchFramework::new(motif, radius)?;
    let fw = patch.framework();
    let u: Vec<DVector<Complex64>> = (0..fw.vertex_count())
        .map(|v| {
            let (kappa, n) = patch.vertex_label(v);
            wf.displacement(kappa, &n, d)
        })
        .collect();

    let p = fw.placement();
    let mut worst: f64 = 0.0;
    let mut longest: f64 = 0.0;
    for &(a, b) in fw.graph().edges() {
        let e = (&p[a] - &p[b]).map(|x| Complex64::new(x, 0.0));
        longest = longest.max(e.norm());
        worst = worst.max(e.dot(&(&u[a] - &u[b])).norm());
    }
    let umax = (0..motif.vertex_count())
        .map(|k| wf.motif_vector.rows(d * k, d).norm())
        .fold(0.0, f64::max);
    if umax == 0.0 || longest == 0.0 {
        return Ok(worst);
    }
    Ok(worst / (longest * umax))
}
