use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SymbolError, SymbolFunction};
use crate::linalg::{analyze, DEFAULT_RANK_TOL};

/// Number of random torus points standing in for "almost every `z`".
pub const SAMPLE_COUNT: usize = 20;
/// Fixed seed for those points.
pub const SAMPLE_SEED: u64 = 0x5eed_7051;
/// Residual below which an inversion structure is certified.
pub const INVERSION_TOL: f64 = 1e-8;

/// Square-summable rigidity class of a crystal framework.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isostatic,
    HasFlex,
    HasStress,
    Both,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Isostatic => "isostatic",
            Verdict::HasFlex => "has_flex",
            Verdict::HasStress => "has_stress",
            Verdict::Both => "both",
        })
    }
}

pub(crate) fn torus_samples(d: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..SAMPLE_COUNT).map(|_| (0..d).map(|_| rng.gen::<f64>()).collect()).collect()
}

/// Decides whether `Φ(z)` has full column rank (no square-summable flex) and
/// full row rank (no square-summable stress) for almost every `z`.
///
/// Square symbols are decided exactly through the determinant grid; otherwise
/// a rank is declared deficient a.e. only if it is deficient at all
/// [`SAMPLE_COUNT`] seeded points.
pub fn square_summable_verdict(sf: &SymbolFunction) -> Result<Verdict, SymbolError> {
    let (flex, stress) = if sf.is_square() {
        let zero = sf.matrix().det_is_zero()?;
        (zero, zero)
    } else {
        let mut col_full = false;
        let mut row_full = false;
        for s in torus_samples(sf.dimension()) {
            let rank = analyze(&sf.evaluate(&s)?, DEFAULT_RANK_TOL).rank;
            col_full |= rank == sf.cols();
            row_full |= rank == sf.rows();
        }
        (!col_full, !row_full)
    };
    Ok(match (flex, stress) {
        (false, false) => Verdict::Isostatic,
        (true, false) => Verdict::HasFlex,
        (false, true) => Verdict::HasStress,
        (true, true) => Verdict::Both,
    })
}

/// Best fit of `det Φ(z) = (−1)^τ z^p · conj(det Φ(z))` over sampled torus points.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionReport {
    pub tau: u8,
    pub p: Vec<i32>,
    /// `max_k |D_k − (−1)^τ z_k^p conj(D_k)| / max_k |D_k|`.
    pub residual: f64,
}

impl InversionReport {
    pub fn certified(&self) -> bool {
        self.residual < INVERSION_TOL
    }
}

/// Searches `τ ∈ {0,1}` and `p ∈ [−2B, 2B]^d` (`B` the determinant degree
/// bounds). The inversion centre is whatever the motif coordinates imply; no
/// recentring is attempted.
pub fn inversion_phase_analysis(sf: &SymbolFunction) -> Result<InversionReport, SymbolError> {
    if !sf.is_square() {
        return Err(SymbolError::NotSquare { rows: sf.rows(), cols: sf.cols() });
    }
    let d = sf.dimension();
    let samples = torus_samples(d);
    let dets: Vec<Complex64> = samples
        .iter()
        .map(|s| sf.evaluate(s).map(|m| m.determinant()))
        .collect::<Result<_, _>>()?;
    let scale = dets.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let bounds: Vec<i32> = sf.matrix().exponent_bounds().iter().map(|b| 2 * b).collect();

    let mut best = InversionReport { tau: 0, p: vec![0; d], residual: f64::INFINITY };
    let mut p: Vec<i32> = bounds.iter().map(|b| -b).collect();
    loop {
        for tau in 0..2u8 {
            let sign = if tau == 0 { 1.0 } else { -1.0 };
            let worst = samples
                .iter()
                .zip(&dets)
                .map(|(s, det)| {
                    let phase: f64 = s.iter().zip(&p).map(|(x, &e)| x * e as f64).sum();
                    (det - Complex64::from_polar(sign, TAU * phase) * det.conj()).norm()
                })
                .fold(0.0, f64::max);
            let residual = if scale > 0.0 { worst / scale } else { worst };
            if residual < best.residual {
                best = InversionReport { tau, p: p.clone(), residual };
            }
        }
        // Odometer over the box.
        let mut q = 0;
        loop {
            if q == d {
                return Ok(best);
            }
            if p[q] < bounds[q] {
                p[q] += 1;
                break;
            }
            p[q] = -bounds[q];
            q += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::catalog::motif;
    use crate::symbol::build_symbol;

    #[test]
    fn two_edge_grid_is_self_reciprocal() {
        let sf = build_symbol(&motif("grid2-min", None).unwrap()).unwrap();
        let r = inversion_phase_analysis(&sf).unwrap();
        assert!(r.certified(), "{r:?}");
        // (z̄−1)(w̄−1) = z̄w̄ (z−1)(w−1) = z̄w̄ · conj((z̄−1)(w̄−1)).
        assert_eq!((r.tau, r.p.clone()), (0, vec![-1, -1]));
    }

    #[test]
    fn honeycomb3_has_flexes_only() {
        let sf = build_symbol(&motif("honeycomb3", None).unwrap()).unwrap();
        assert_eq!(square_summable_verdict(&sf).unwrap(), Verdict::HasFlex);
        assert!(matches!(inversion_phase_analysis(&sf), Err(SymbolError::NotSquare { .. })));
    }
}
