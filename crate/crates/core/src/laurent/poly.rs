use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::LaurentError;

/// Coefficients smaller than this are dropped after every arithmetic step.
pub const PRUNE_ABS: f64 = 1e-14;

/// Multivariate Laurent polynomial `Σ c_a z^a` with `a ∈ ℤ^d` and complex `c_a`.
///
/// Terms are kept in lexicographic exponent order and never store a zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Vec<i32>, Complex64>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::monomial(c, vec![0; dim])
    }

    /// `c · z^exponent`.
    pub fn monomial(c: Complex64, exponent: Vec<i32>) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<i32>, Complex64)>) -> Result<Self, LaurentError> {
        let mut p = Self::zero(dim);
        for (a, c) in terms {
            if a.len() != dim {
                return Err(LaurentError::DimensionMismatch { expected: dim, found: a.len() });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(LaurentError::NonFinite);
            }
            *p.terms.entry(a).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        p.prune(PRUNE_ABS);
        Ok(p)
    }

    fn add_term(&mut self, a: Vec<i32>, c: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(a) {
            Entry::Vacant(v) => {
                if c.norm() >= PRUNE_ABS {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().norm() < PRUNE_ABS {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn prune(&mut self, threshold: f64) {
        self.terms.retain(|_, c| c.norm() >= threshold);
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[i32]) -> Complex64 {
        self.terms.get(exponent).copied().unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient moduli; bounds `|p(z)|` on the torus.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Largest `|a_q|` over all terms, per variable.
    pub fn max_abs_exponents(&self) -> Vec<i32> {
        let mut out = vec![0; self.dim];
        for a in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(a) {
                *o = (*o).max(x.abs());
            }
        }
        out
    }

    fn min_exponents(&self) -> Vec<i32> {
        let mut out = vec![i32::MAX; self.dim];
        for a in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(a) {
                *o = (*o).min(x);
            }
        }
        out
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.dim, "shift dimension");
        let terms = self
            .terms
            .iter()
            .map(|(a, &c)| (a.iter().zip(shift).map(|(x, s)| x + s).collect(), c))
            .collect();
        Self { dim: self.dim, terms }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut p = Self { dim: self.dim, terms: self.terms.iter().map(|(a, &x)| (a.clone(), x * c)).collect() };
        p.prune(PRUNE_ABS);
        p
    }

    /// Evaluates at an arbitrary point with nonzero coordinates.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64, LaurentError> {
        if z.len() != self.dim {
            return Err(LaurentError::DimensionMismatch { expected: self.dim, found: z.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(a, &c)| a.iter().zip(z).fold(c, |acc, (&e, &zq)| acc * zq.powi(e)))
            .sum())
    }

    /// Evaluates at `z_q = e^{2πi s_q}`.
    pub fn eval_angles(&self, s: &[f64]) -> Result<Complex64, LaurentError> {
        if s.len() != self.dim {
            return Err(LaurentError::DimensionMismatch { expected: self.dim, found: s.len() });
        }
        // Summing phases before taking exp keeps |z^a| = 1 exactly.
        Ok(self
            .terms
            .iter()
            .map(|(a, &c)| {
                let phase: f64 = a.iter().zip(s).map(|(&e, &x)| e as f64 * x).sum();
                c * Complex64::from_polar(1.0, TAU * phase)
            })
            .sum())
    }

    /// Canonical representative of `{c · z^a · p}`: exponents shifted so each
    /// variable's minimum is 0, then scaled so the lexicographically smallest
    /// term has coefficient 1.
    pub fn normalize(&self) -> Result<Self, LaurentError> {
        let (_, _, p) = self.normal_parts()?;
        Ok(p)
    }

    /// `(c, a, q)` with `self = c · z^a · q` and `q` normalised.
    fn normal_parts(&self) -> Result<(Complex64, Vec<i32>, Self), LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let lo = self.min_exponents();
        let neg: Vec<i32> = lo.iter().map(|x| -x).collect();
        let shifted = self.shift(&neg);
        let lead = *shifted.terms.values().next().expect("nonzero");
        let q = Self { dim: self.dim, terms: shifted.terms.iter().map(|(a, &c)| (a.clone(), c / lead)).collect() };
        Ok((lead, lo, q))
    }

    /// Finds `(c, a)` with `self = c · z^a · other`, comparing normalised
    /// coefficients to `tol`.
    pub fn unit_ratio(&self, other: &Self, tol: f64) -> Option<(Complex64, Vec<i32>)> {
        if self.dim != other.dim {
            return None;
        }
        let (c1, a1, p) = self.normal_parts().ok()?;
        let (c2, a2, q) = other.normal_parts().ok()?;
        if p.terms.len() != q.terms.len() {
            return None;
        }
        for ((ka, va), (kb, vb)) in p.terms.iter().zip(&q.terms) {
            if ka != kb || (va - vb).norm() > tol {
                return None;
            }
        }
        Some((c1 / c2, a1.iter().zip(&a2).map(|(x, y)| x - y).collect()))
    }

    /// Equality up to a nonzero scalar and a monomial factor.
    pub fn equals_up_to_unit(&self, other: &Self, tol: f64) -> bool {
        self.unit_ratio(other, tol).is_some()
    }

    /// Coefficient-wise distance `max_a |c_a − d_a|`.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, c) in &self.terms {
            worst = worst.max((c - other.coeff(a)).norm());
        }
        for (a, d) in &other.terms {
            if !self.terms.contains_key(a) {
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    /// True if every coefficient has imaginary part below `tol`.
    pub fn has_real_coefficients(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        let mut out = self.clone();
        for (a, &c) in &rhs.terms {
            *out.terms.entry(a.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune(PRUNE_ABS);
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in multiplication");
        let mut out = LaurentPoly::zero(self.dim);
        for (a, &c) in &self.terms {
            for (b, &d) in &rhs.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *out.terms.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c * d;
            }
        }
        out.prune(PRUNE_ABS);
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
