//! Angle transmission along a strip of vertical bars of alternating heights.
//!
//! Bar `k` stands on the base line at `x = k·s`; bars tilt by an angle measured
//! from the vertical (positive = towards `+x`). Neighbouring tops are joined
//! by a bar of fixed length, so each cell is a four-bar linkage: given the
//! left bar's angle, the right top lies on the circle of radius `h_right`
//! about its base and on the circle of radius `|top_left − top_right|` about
//! the left top. Of the two intersections, the one nearest the previous
//! configuration is taken, starting from the upright rest position.

use super::DeformError;

/// Largest angle increment between consecutive continuation steps.
pub const CONTINUATION_STEP: f64 = 0.01;
/// Central-difference step for `γ'`.
pub const FD_STEP: f64 = 1e-6;
/// Bisection tolerance for `α₁` and for inverting `γ`.
pub const BISECTION_TOL: f64 = 1e-10;
/// Scan step used to bracket the first zero of `γ'`.
const SCAN_STEP: f64 = 0.005;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapeziumStrip {
    pub a: f64,
    pub b: f64,
    pub spacing: f64,
    pub cells: usize,
}

type Point = [f64; 2];

fn dist(p: Point, q: Point) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Intersections of the circles `|x − c1| = r1` and `|x − c2| = r2`.
fn circle_intersections(c1: Point, r1: f64, c2: Point, r2: f64) -> Option<[Point; 2]> {
    let d = dist(c1, c2);
    if d == 0.0 {
        return None;
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let mut h2 = r1 * r1 - a * a;
    if h2 < 0.0 {
        // Tangency lost to rounding still counts as feasible.
        if h2 > -1e-12 * r1 * r1 {
            h2 = 0.0;
        } else {
            return None;
        }
    }
    let h = h2.sqrt();
    let (ux, uy) = ((c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d);
    let m = [c1[0] + a * ux, c1[1] + a * uy];
    Some([[m[0] - h * uy, m[1] + h * ux], [m[0] + h * uy, m[1] - h * ux]])
}

/// Per-cell linkage data: bar heights and the fixed top-link length.
#[derive(Clone, Copy, Debug)]
struct Cell {
    base_left: Point,
    base_right: Point,
    h_left: f64,
    h_right: f64,
    link: f64,
}

impl Cell {
    fn top(base: Point, h: f64, angle: f64) -> Point {
        [base[0] + h * angle.sin(), base[1] + h * angle.cos()]
    }

    /// Right bar angle and top given the left bar angle, nearest to `previous`.
    fn solve(&self, left_angle: f64, previous: Point) -> Option<(f64, Point)> {
        let p = Self::top(self.base_left, self.h_left, left_angle);
        let [q1, q2] = circle_intersections(self.base_right, self.h_right, p, self.link)?;
        let q = if dist(q1, previous) <= dist(q2, previous) { q1 } else { q2 };
        let angle = (q[0] - self.base_right[0]).atan2(q[1] - self.base_right[1]);
        Some((angle, q))
    }
}

/// Outcome of [`TrapeziumStrip::locking_angle`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Locking {
    /// First positive zero of `γ'`.
    pub alpha1: f64,
    /// `λ = γ(α₁)`.
    pub lambda: f64,
}

/// Backward orbit `A, γ⁻¹(A), γ⁻²(A), …` on `[0, α₁]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BackwardOrbit {
    pub iterates: Vec<f64>,
    /// Number of inverse steps after which the orbit leaves `[0, α₁]`: the last
    /// iterate is at least `λ`, so its preimage, if any, exceeds `α₁`.
    pub steps: usize,
}

impl TrapeziumStrip {
    pub fn new(a: f64, b: f64, spacing: f64, cells: usize) -> Result<Self, DeformError> {
        if !(a.is_finite() && b.is_finite() && spacing.is_finite()) || b <= 0.0 || a < b || spacing <= 0.0 || cells == 0 {
            return Err(DeformError::StripGeometry(format!(
                "need a >= b > 0, spacing > 0 and at least one cell (a={a}, b={b}, spacing={spacing}, cells={cells})"
            )));
        }
        Ok(Self { a, b, spacing, cells })
    }

    pub fn height(&self, bar: usize) -> f64 {
        if bar % 2 == 0 {
            self.a
        } else {
            self.b
        }
    }

    fn cell(&self, k: usize) -> Cell {
        let (h_left, h_right) = (self.height(k), self.height(k + 1));
        Cell {
            base_left: [k as f64 * self.spacing, 0.0],
            base_right: [(k + 1) as f64 * self.spacing, 0.0],
            h_left,
            h_right,
            link: self.spacing.hypot(h_left - h_right),
        }
    }

    /// Angles of bars `0..=n_cells` when bar 0 is tilted to `alpha`, following
    /// the branch through the rest position.
    fn propagate(&self, alpha: f64, n_cells: usize) -> Result<Vec<f64>, DeformError> {
        if alpha == 0.0 {
            return Ok(vec![0.0; n_cells + 1]);
        }
        let cells: Vec<Cell> = (0..n_cells).map(|k| self.cell(k)).collect();
        let mut tops: Vec<Point> = cells.iter().map(|c| Cell::top(c.base_right, c.h_right, 0.0)).collect();
        let mut angles = vec![0.0; n_cells + 1];
        let steps = (alpha.abs() / CONTINUATION_STEP).ceil().max(1.0) as usize;
        let mut last_ok = 0.0;
        for step in 1..=steps {
            let x = alpha * step as f64 / steps as f64;
            let mut left = x;
            let mut next_angles = vec![x];
            for (k, cell) in cells.iter().enumerate() {
                let Some((angle, q)) = cell.solve(left, tops[k]) else {
                    return Err(DeformError::Locked { alpha, last_feasible: last_ok });
                };
                tops[k] = q;
                next_angles.push(angle);
                left = angle;
            }
            angles = next_angles;
            last_ok = x;
        }
        Ok(angles)
    }

    /// `β(α)`: angle of bar 1.
    pub fn beta(&self, alpha: f64) -> Result<f64, DeformError> {
        Ok(self.propagate(alpha, 1)?[1])
    }

    /// `γ(α)`: angle of bar 2, after one tall–short–tall double trapezium.
    pub fn transmission(&self, alpha: f64) -> Result<f64, DeformError> {
        Ok(self.propagate(alpha, 2)?[2])
    }

    /// Angles of all `cells + 1` bars.
    pub fn chain(&self, alpha: f64) -> Result<Vec<f64>, DeformError> {
        self.propagate(alpha, self.cells)
    }

    /// Bar top and base coordinates for a tilt of `alpha` on bar 0, in the
    /// vertex order of the catalog strip framework (base, top per bar).
    pub fn placement(&self, alpha: f64) -> Result<Vec<[f64; 2]>, DeformError> {
        let angles = self.chain(alpha)?;
        let mut out = Vec::with_capacity(2 * angles.len());
        for (k, &t) in angles.iter().enumerate() {
            let base = [k as f64 * self.spacing, 0.0];
            out.push(base);
            out.push(Cell::top(base, self.height(k), t));
        }
        Ok(out)
    }

    /// `γ'(α)` by central differences at `h` and `h/2`, Richardson-combined.
    pub fn derivative(&self, alpha: f64) -> Result<f64, DeformError> {
        let central = |h: f64| -> Result<f64, DeformError> {
            Ok((self.transmission(alpha + h)? - self.transmission(alpha - h)?) / (2.0 * h))
        };
        let (d1, d2) = (central(FD_STEP)?, central(FD_STEP / 2.0)?);
        Ok((4.0 * d2 - d1) / 3.0)
    }

    /// Largest `α` (to [`BISECTION_TOL`]) for which the double trapezium closes.
    pub fn feasibility_limit(&self) -> f64 {
        let mut lo = 0.0;
        let mut hi = std::f64::consts::FRAC_PI_2;
        if self.transmission(hi).is_ok() {
            return hi;
        }
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if self.transmission(mid).is_ok() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `α₁`, the first positive zero of `γ'`, and `λ = γ(α₁)`.
    pub fn locking_angle(&self) -> Result<Locking, DeformError> {
        if self.a == self.b {
            return Err(DeformError::StripGeometry("locking needs a > b".into()));
        }
        let limit = self.feasibility_limit();
        let usable = limit - 2.0 * FD_STEP;
        let mut lo = SCAN_STEP;
        if self.derivative(lo)? <= 0.0 {
            return Err(DeformError::NoLocking { feasible_limit: limit });
        }
        let mut hi = None;
        let mut x = lo;
        while x + SCAN_STEP <= usable {
            let next = x + SCAN_STEP;
            if self.derivative(next)? <= 0.0 {
                hi = Some(next);
                break;
            }
            lo = next;
            x = next;
        }
        let Some(mut hi) = hi else {
            return Err(DeformError::NoLocking { feasible_limit: limit });
        };
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if self.derivative(mid)? > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let alpha1 = 0.5 * (lo + hi);
        Ok(Locking { alpha1, lambda: self.transmission(alpha1)? })
    }

    /// `γ⁻¹(y)` on the increasing branch `[0, α₁]`, or `None` if `y ∉ [0, λ]`.
    pub fn inverse_transmission(&self, y: f64, lock: &Locking) -> Result<Option<f64>, DeformError> {
        if y < 0.0 || y > lock.lambda {
            return Ok(None);
        }
        let (mut lo, mut hi) = (0.0, lock.alpha1);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if self.transmission(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Some(0.5 * (lo + hi)))
    }

    /// Iterates `γ⁻¹` from `start` until the orbit can no longer stay in
    /// `[0, α₁]`. Gives up after `max_steps`.
    pub fn backward_iterates(&self, start: f64, lock: &Locking, max_steps: usize) -> Result<BackwardOrbit, DeformError> {
        let mut iterates = vec![start];
        let mut current = start;
        for step in 1..=max_steps {
            match self.inverse_transmission(current, lock)? {
                Some(prev) => {
                    iterates.push(prev);
                    current = prev;
                }
                None => return Ok(BackwardOrbit { iterates, steps: step }),
            }
        }
        Err(DeformError::OrbitTooLong { steps: max_steps, last: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_position_is_fixed() {
        let s = TrapeziumStrip::new(2.0, 1.0, 1.0, 4).unwrap();
        assert_eq!(s.transmission(0.0).unwrap(), 0.0);
        assert!(s.chain(0.0).unwrap().iter().all(|&x| x.abs() < 1e-15));
    }

    #[test]
    fn equal_bars_transmit_exactly() {
        let s = TrapeziumStrip::new(1.5, 1.5, 1.0, 2).unwrap();
        for alpha in [0.05, 0.3, 0.7] {
            assert!((s.transmission(alpha).unwrap() - alpha).abs() < 1e-12);
        }
    }

    #[test]
    fn transmission_contracts() {
        let s = TrapeziumStrip::new(2.0, 1.0, 1.0, 2).unwrap();
        let g = s.transmission(0.1).unwrap();
        assert!(0.0 < g && g < 0.1, "{g}");
        assert!(s.beta(0.1).unwrap() > 0.1);
    }

    #[test]
    fn links_keep_their_length() {
        let s = TrapeziumStrip::new(2.0, 1.0, 1.0, 3).unwrap();
        let rest = s.placement(0.0).unwrap();
        let moved = s.placement(0.2).unwrap();
        for k in 0..3 {
            let (t0, t1) = (2 * k + 1, 2 * k + 3);
            assert!((dist(rest[t0], rest[t1]) - dist(moved[t0], moved[t1])).abs() < 1e-12);
            assert!((dist(rest[t0], rest[t0 - 1]) - dist(moved[t0], moved[t0 - 1])).abs() < 1e-12);
        }
    }

    #[test]
    fn past_feasibility_reports_locking() {
        let s = TrapeziumStrip::new(2.0, 1.0, 1.0, 2).unwrap();
        assert!(matches!(s.transmission(1.4), Err(DeformError::Locked { .. })));
    }

    #[test]
    fn bad_geometry() {
        assert!(TrapeziumStrip::new(1.0, 2.0, 1.0, 2).is_err());
        assert!(TrapeziumStrip::new(2.0, 1.0, 0.0, 2).is_err());
    }
}
