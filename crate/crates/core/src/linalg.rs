//! Singular-value based rank, kernel and cokernel computations.
//!
//! A singular value `σ` counts as zero iff `σ < max(1e-12, tol · σ_max)`, where
//! `tol` defaults to [`DEFAULT_RANK_TOL`].

use nalgebra::{ComplexField, DMatrix, DVector};

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Absolute floor below which a singular value is always treated as zero.
pub const ABSOLUTE_FLOOR: f64 = 1e-12;

/// Threshold separating zero from nonzero singular values.
pub fn zero_threshold(sigma_max: f64, rel_tol: f64) -> f64 {
    ABSOLUTE_FLOOR.max(rel_tol * sigma_max)
}

/// Result of a singular value decomposition reduced to what rank questions need.
#[derive(Clone, Debug)]
pub struct RankAnalysis<T: ComplexField> {
    /// The `min(rows, cols)` singular values in descending order.
    pub singular_values: Vec<f64>,
    /// Numerical rank under the threshold used.
    pub rank: usize,
    /// Orthonormal basis of the right null space.
    pub kernel: Vec<DVector<T>>,
}

impl<T: ComplexField<RealField = f64>> RankAnalysis<T> {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Smallest of the `min(rows, cols)` singular values (zero for empty matrices).
    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    pub fn nullity(&self) -> usize {
        self.kernel.len()
    }
}

/// Rank and orthonormal kernel basis of `m` with relative tolerance `rel_tol`.
pub fn analyze<T>(m: &DMatrix<T>, rel_tol: f64) -> RankAnalysis<T>
where
    T: ComplexField<RealField = f64>,
{
    let (rows, cols) = m.shape();
    if cols == 0 {
        return RankAnalysis { singular_values: Vec::new(), rank: 0, kernel: Vec::new() };
    }
    if rows == 0 {
        let kernel = (0..cols)
            .map(|k| {
                let mut v = DVector::<T>::zeros(cols);
                v[k] = T::one();
                v
            })
            .collect();
        return RankAnalysis { singular_values: Vec::new(), rank: 0, kernel };
    }

    // Zero rows leave the spectrum unchanged but give a full V factor.
    let work = if rows < cols {
        let mut padded = DMatrix::<T>::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sv = svd.singular_values;

    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[b].partial_cmp(&sv[a]).unwrap_or(std::cmp::Ordering::Equal));
    let sigma_max = sv[order[0]];
    let threshold = zero_threshold(sigma_max, rel_tol);

    let keep = rows.min(cols);
    let singular_values: Vec<f64> = order.iter().take(keep).map(|&k| sv[k]).collect();
    let rank = singular_values.iter().filter(|&&s| s >= threshold).count();
    let kernel = order
        .iter()
        .skip(rank)
        .map(|&k| v_t.row(k).adjoint())
        .collect();
    RankAnalysis { singular_values, rank, kernel }
}

/// Orthonormal basis of the left null space (kernel of the adjoint).
pub fn cokernel<T>(m: &DMatrix<T>, rel_tol: f64) -> Vec<DVector<T>>
where
    T: ComplexField<RealField = f64>,
{
    analyze(&m.adjoint(), rel_tol).kernel
}

/// Numerical rank with the default tolerance.
pub fn rank<T>(m: &DMatrix<T>) -> usize
where
    T: ComplexField<RealField = f64>,
{
    analyze(m, DEFAULT_RANK_TOL).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn wide_matrix_gets_full_kernel() {
        let m: DMatrix<f64> = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let a = analyze(&m, DEFAULT_RANK_TOL);
        assert_eq!(a.rank, 1);
        assert_eq!(a.nullity(), 2);
        for v in &a.kernel {
            assert!((&m * v).norm() < 1e-14);
            assert!((DVector::<f64>::norm(v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_kernel_is_annihilated() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let m = DMatrix::from_row_slice(2, 2, &[one, i, i, -one]);
        let a = analyze(&m, DEFAULT_RANK_TOL);
        assert_eq!(a.rank, 1);
        assert!((&m * &a.kernel[0]).norm() < 1e-14);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = DMatrix::<f64>::zeros(3, 2);
        let a = analyze(&m, DEFAULT_RANK_TOL);
        assert_eq!(a.rank, 0);
        assert_eq!(a.nullity(), 2);
        assert_eq!(cokernel(&m, DEFAULT_RANK_TOL).len(), 3);
    }
}
