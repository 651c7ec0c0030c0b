use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{LaurentError, LaurentPoly};

/// Relative pruning threshold applied to interpolated determinant coefficients.
pub const DET_PRUNE_REL: f64 = 1e-10;
/// Coefficients below this fraction of the Hadamard scale are treated as
/// rounding noise even when every coefficient is that small.
pub const DET_PRUNE_HADAMARD: f64 = 1e-11;
/// Per-point tolerance for [`SymbolMatrix::det_is_zero`], relative to the
/// Hadamard bound at that point.
pub const DET_ZERO_REL: f64 = 1e-9;

/// Matrix of Laurent polynomials in a common number of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix {
    rows: usize,
    cols: usize,
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl SymbolMatrix {
    pub fn zeros(rows: usize, cols: usize, dim: usize) -> Self {
        Self { rows, cols, dim, entries: vec![LaurentPoly::zero(dim); rows * cols] }
    }

    /// `entries` in row-major order.
    pub fn new(rows: usize, cols: usize, dim: usize, entries: Vec<LaurentPoly>) -> Result<Self, LaurentError> {
        if entries.len() != rows * cols {
            return Err(LaurentError::EntryCount { expected: rows * cols, found: entries.len() });
        }
        if let Some(p) = entries.iter().find(|p| p.dimension() != dim) {
            return Err(LaurentError::DimensionMismatch { expected: dim, found: p.dimension() });
        }
        Ok(Self { rows, cols, dim, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) -> Result<(), LaurentError> {
        if p.dimension() != self.dim {
            return Err(LaurentError::DimensionMismatch { expected: self.dim, found: p.dimension() });
        }
        self.entries[r * self.cols + c] = p;
        Ok(())
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>, LaurentError> {
        let values = self.entries.iter().map(|p| p.eval(z)).collect::<Result<Vec<_>, _>>()?;
        Ok(DMatrix::from_row_slice(self.rows, self.cols, &values))
    }

    /// Evaluates at `z_q = e^{2πi s_q}`.
    pub fn eval_angles(&self, s: &[f64]) -> Result<DMatrix<Complex64>, LaurentError> {
        let values = self.entries.iter().map(|p| p.eval_angles(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(DMatrix::from_row_slice(self.rows, self.cols, &values))
    }

    /// Row-wise worst-case degree bound `B_q = Σ_rows max_entry |a_q|`; every
    /// exponent of the determinant lies in `[−B_q, B_q]`.
    pub fn exponent_bounds(&self) -> Vec<i32> {
        let mut bounds = vec![0; self.dim];
        for r in 0..self.rows {
            let mut row = vec![0; self.dim];
            for c in 0..self.cols {
                for (m, e) in row.iter_mut().zip(self.get(r, c).max_abs_exponents()) {
                    *m = (*m).max(e);
                }
            }
            for (b, m) in bounds.iter_mut().zip(row) {
                *b += m;
            }
        }
        bounds
    }

    /// Product of row `ℓ¹` coefficient norms; bounds `|det M(z)|` on the torus.
    pub fn hadamard_scale(&self) -> f64 {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).l1_norm()).sum::<f64>())
            .product()
    }

    fn require_square(&self) -> Result<(), LaurentError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LaurentError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Determinants on the roots-of-unity grid with `2B_q + 1` points per axis,
    /// in row-major grid order (axis 0 slowest). Also returns the per-point
    /// Hadamard bound of the evaluated matrix.
    fn det_grid(&self, sizes: &[usize]) -> Vec<(Complex64, f64)> {
        let total: usize = sizes.iter().product();
        (0..total)
            .into_par_iter()
            .map(|flat| {
                let s = grid_angles(flat, sizes);
                let m = self.eval_angles(&s).expect("dimension checked");
                let bound: f64 = m.row_iter().map(|row| row.norm()).product();
                (m.determinant(), bound)
            })
            .collect()
    }

    /// Exact determinant by evaluation on a roots-of-unity grid and discrete
    /// Fourier inversion.
    pub fn det_interpolate(&self) -> Result<LaurentPoly, LaurentError> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(LaurentPoly::constant(self.dim, Complex64::new(1.0, 0.0)));
        }
        let bounds = self.exponent_bounds();
        let sizes: Vec<usize> = bounds.iter().map(|&b| 2 * b as usize + 1).collect();
        let mut values: Vec<Complex64> = self.det_grid(&sizes).into_iter().map(|(d, _)| d).collect();
        inverse_dft(&mut values, &sizes);

        let max = values.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let threshold = (DET_PRUNE_REL * max).max(DET_PRUNE_HADAMARD * self.hadamard_scale());
        let terms = values.iter().enumerate().filter(|(_, c)| c.norm() >= threshold).map(|(flat, &c)| {
            let exponent = grid_index(flat, &sizes)
                .iter()
                .zip(&bounds)
                .map(|(&k, &b)| if k as i32 > b { k as i32 - (2 * b + 1) } else { k as i32 })
                .collect();
            (exponent, c)
        });
        LaurentPoly::from_terms(self.dim, terms)
    }

    /// Whether `det M` is the zero polynomial, decided on the same grid as
    /// [`det_interpolate`](Self::det_interpolate): zero at all `Π(2B_q+1)`
    /// points forces every coefficient to vanish.
    pub fn det_is_zero(&self) -> Result<bool, LaurentError> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(false);
        }
        let sizes: Vec<usize> = self.exponent_bounds().iter().map(|&b| 2 * b as usize + 1).collect();
        Ok(self.det_grid(&sizes).iter().all(|(d, bound)| d.norm() <= DET_ZERO_REL * bound))
    }
}

fn grid_index(mut flat: usize, sizes: &[usize]) -> Vec<usize> {
    let mut k = vec![0; sizes.len()];
    for q in (0..sizes.len()).rev() {
        k[q] = flat % sizes[q];
        flat /= sizes[q];
    }
    k
}

fn grid_angles(flat: usize, sizes: &[usize]) -> Vec<f64> {
    grid_index(flat, sizes).iter().zip(sizes).map(|(&k, &n)| k as f64 / n as f64).collect()
}

/// In-place separable inverse DFT: `c[a] = N⁻¹ Σ_k v[k] e^{−2πi a·k/N}` per axis.
fn inverse_dft(values: &mut [Complex64], sizes: &[usize]) {
    let total = values.len();
    let mut stride = total;
    for &n in sizes {
        stride /= n;
        let roots: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(1.0 / n as f64, -TAU * k as f64 / n as f64)).collect();
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for block in (0..total).step_by(stride * n) {
            for offset in 0..stride {
                let base = block + offset;
                for (a, out) in line.iter_mut().enumerate() {
                    *out = (0..n).map(|k| values[base + k * stride] * roots[(a * k) % n]).sum();
                }
                for (k, &v) in line.iter().enumerate() {
                    values[base + k * stride] = v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn bar_minus_one(dim: usize, q: usize) -> LaurentPoly {
        let mut e = vec![0; dim];
        e[q] = -1;
        &LaurentPoly::monomial(c(1.0), e) - &LaurentPoly::constant(dim, c(1.0))
    }

    #[test]
    fn diagonal_determinant_is_product() {
        let (a, b) = (bar_minus_one(2, 0), bar_minus_one(2, 1));
        let m = SymbolMatrix::new(2, 2, 2, vec![a.clone(), LaurentPoly::zero(2), LaurentPoly::zero(2), b.clone()]).unwrap();
        assert_eq!(m.exponent_bounds(), vec![1, 1]);
        let det = m.det_interpolate().unwrap();
        assert!(det.max_coeff_diff(&(&a * &b)) < 1e-14);
        assert!(!m.det_is_zero().unwrap());
    }

    #[test]
    fn repeated_row_has_zero_determinant() {
        let a = bar_minus_one(1, 0);
        let one = LaurentPoly::constant(1, c(2.0));
        let m = SymbolMatrix::new(2, 2, 1, vec![a.clone(), one.clone(), a, one]).unwrap();
        assert!(m.det_is_zero().unwrap());
        assert!(m.det_interpolate().unwrap().is_zero());
    }

    #[test]
    fn non_square_rejected() {
        let m = SymbolMatrix::zeros(2, 3, 2);
        assert_eq!(m.det_interpolate(), Err(LaurentError::NotSquare { rows: 2, cols: 3 }));
    }
}
