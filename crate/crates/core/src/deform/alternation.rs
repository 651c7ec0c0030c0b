//! Closed-form alternation flexes of the squares and kagome frameworks.
//!
//! Both frameworks are made of rigid units (braced squares, triangles) that
//! meet at corners, and two units sharing a corner are point reflections of
//! each other through it. Rotating one family of units by `θ` about their
//! centres and the other by `−θ`, while the centres contract towards the
//! origin by `cos θ`, keeps every corner contact: a corner at `c + d` is
//! carried to `cos θ·c + R(θ)d` from one side and to
//! `cos θ·(c + 2d) − R(−θ)d` from the other, and these agree because
//! `R(θ) + R(−θ) = 2 cos θ`. Every motif vertex is a corner of the unit at
//! `c + Ln`, so one formula places the whole framework.

use nalgebra::{DMatrix, DVector};

use super::DeformError;
use crate::framework::catalog::motif;
use crate::framework::{FiniteFramework, Motif, PatchFramework};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternationKind {
    Squares,
    Kagome,
}

impl AlternationKind {
    pub fn parse(name: &str) -> Result<Self, DeformError> {
        match name {
            "squares" => Ok(Self::Squares),
            "kagome" => Ok(Self::Kagome),
            other => Err(DeformError::UnknownAlternation(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Squares => "squares",
            Self::Kagome => "kagome",
        }
    }

    pub fn motif(self) -> Motif {
        motif(self.name(), None).expect("catalog entry")
    }

    /// Centre of the unit whose corners are the motif vertices.
    pub fn centre(self) -> DVector<f64> {
        match self {
            Self::Squares => DVector::from_vec(vec![0.5, 0.5]),
            Self::Kagome => DVector::from_vec(vec![0.25, 3f64.sqrt() / 12.0]),
        }
    }
}

fn rotation(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

/// Flexed framework on the patch of radius `radius`, with the undeformed one
/// for comparison.
#[derive(Clone, Debug)]
pub struct AlternationFlex {
    pub kind: AlternationKind,
    pub theta: f64,
    pub patch: PatchFramework,
    pub framework: FiniteFramework,
    /// Lattice of the flexed framework, `cos θ · L`.
    pub lattice: DMatrix<f64>,
}

impl AlternationFlex {
    /// Largest `|ℓ_e(θ) − ℓ_e(0)|` over the patch edges.
    pub fn max_length_change(&self) -> f64 {
        self.framework
            .edge_lengths()
            .iter()
            .zip(self.patch.framework().edge_lengths())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Position of vertex `κ` of cell `n` at angle `θ`.
pub fn alternation_position(kind: AlternationKind, theta: f64, kappa: usize, cell: &[i64]) -> DVector<f64> {
    let m = kind.motif();
    let c = kind.centre();
    let centre = &c + m.translation(cell);
    centre * theta.cos() + rotation(theta) * (&m.cartesian()[kappa] - c)
}

pub fn alternation_flex(kind: &str, theta: f64, radius: usize) -> Result<AlternationFlex, DeformError> {
    let kind = AlternationKind::parse(kind)?;
    if !theta.is_finite() || theta.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(DeformError::AngleOutOfRange(theta));
    }
    let m = kind.motif();
    let patch = PatchFramework::new(&m, radius)?;
    let c = kind.centre();
    let r = rotation(theta);
    let placement = (0..patch.framework().vertex_count())
        .map(|v| {
            let (kappa, n) = patch.vertex_label(v);
            (&c + m.translation(&n)) * theta.cos() + &r * (&m.cartesian()[kappa] - &c)
        })
        .collect();
    let framework = patch.framework().with_placement(placement)?;
    let lattice = m.lattice() * theta.cos();
    Ok(AlternationFlex { kind, theta, patch, framework, lattice })
}

/// `dp/dθ` at `θ = 0` for the motif vertices: `J(p_κ − c)` with `J` the
/// quarter turn. The same vector is repeated in every cell, so as a symbol
/// kernel vector it lives at phase `s = 0`.
pub fn alternation_velocity(kind: AlternationKind) -> DVector<f64> {
    let m = kind.motif();
    let c = kind.centre();
    let j = rotation(std::f64::consts::FRAC_PI_2);
    let mut u = DVector::zeros(2 * m.vertex_count());
    for (k, p) in m.cartesian().iter().enumerate() {
        u.rows_mut(2 * k, 2).copy_from(&(&j * (p - &c)));
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_angle_is_identity() {
        let f = alternation_flex("kagome", 0.0, 2).unwrap();
        for (p, q) in f.framework.placement().iter().zip(f.patch.framework().placement()) {
            assert!((p - q).amax() < 1e-15);
        }
    }

    #[test]
    fn squares_keep_lengths() {
        let f = alternation_flex("squares", std::f64::consts::FRAC_PI_6, 2).unwrap();
        assert!(f.max_length_change() < 1e-12);
    }

    #[test]
    fn kagome_keeps_lengths() {
        let f = alternation_flex("kagome", 0.4, 2).unwrap();
        assert!(f.max_length_change() < 1e-12);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(alternation_flex("hexagons", 0.1, 1), Err(DeformError::UnknownAlternation(_))));
        assert!(matches!(alternation_flex("squares", 1.6, 1), Err(DeformError::AngleOutOfRange(_))));
    }
}
