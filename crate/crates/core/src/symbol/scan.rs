use rayon::prelude::*;

use super::{SymbolError, SymbolFunction};
use crate::linalg::{analyze, DEFAULT_RANK_TOL};

/// One grid point of a [`ModeScan`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSample {
    pub s: Vec<f64>,
    pub mu: usize,
    pub sigma_min: f64,
    /// `|det Φ|`, only for square symbols.
    pub abs_det: Option<f64>,
}

/// `μ` and `σ_min` on the grid `s = k/N`, `k ∈ {0..N−1}^d`, row-major in `k`.
#[derive(Clone, Debug)]
pub struct ModeScan {
    pub resolution: usize,
    pub dimension: usize,
    pub samples: Vec<ModeSample>,
}

impl ModeScan {
    /// Samples with `μ > 0`.
    pub fn rum_points(&self) -> Vec<&ModeSample> {
        self.samples.iter().filter(|s| s.mu > 0).collect()
    }

    pub fn csv_header(&self) -> String {
        let mut cols: Vec<String> = (1..=self.dimension).map(|q| format!("s{q}")).collect();
        cols.extend(["mu", "sigma_min", "abs_det"].map(String::from));
        cols.join(",")
    }

    /// CSV with one line per sample; reals in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for p in &self.samples {
            let mut fields: Vec<String> = p.s.iter().map(|x| format!("{x}")).collect();
            fields.push(p.mu.to_string());
            fields.push(format!("{:.16e}", p.sigma_min));
            fields.push(p.abs_det.map(|x| format!("{x:.16e}")).unwrap_or_default());
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn rum_scan(sf: &SymbolFunction, resolution: usize) -> Result<ModeScan, SymbolError> {
    rum_scan_tol(sf, resolution, DEFAULT_RANK_TOL)
}

pub fn rum_scan_tol(sf: &SymbolFunction, resolution: usize, rel_tol: f64) -> Result<ModeScan, SymbolError> {
    if resolution < 2 {
        return Err(SymbolError::GridTooCoarse(resolution));
    }
    let d = sf.dimension();
    let total = resolution.pow(d as u32);
    let samples = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut s = vec![0.0; d];
            let mut rest = flat;
            for q in (0..d).rev() {
                s[q] = (rest % resolution) as f64 / resolution as f64;
                rest /= resolution;
            }
            let m = sf.evaluate(&s)?;
            let a = analyze(&m, rel_tol);
            let abs_det = sf.is_square().then(|| m.determinant().norm());
            Ok(ModeSample { mu: sf.cols() - a.rank, sigma_min: a.sigma_min(), abs_det, s })
        })
        .collect::<Result<Vec<_>, SymbolError>>()?;
    Ok(ModeScan { resolution, dimension: d, samples })
}
