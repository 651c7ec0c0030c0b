//! Flow-periodic deformation of planar motifs by Newton continuation.
//!
//! The lattice follows `L(t) = V_β H_α S_t L(0)` with
//! `H_α = diag(1−α, 1)`, `V_β = diag(1, 1−β)` and the skew
//! `S_t = [[1, sin t], [1 − cos t, 1]]`. The unknowns at each `t` are the
//! Cartesian motif positions and `(α, β)`; the equations are the squared
//! motif edge lengths (edges leaving the cell measured through `L(t)`) and
//! the position of one pinned vertex.
//!
//! Each step first transports the previous positions by the affine map
//! `L_new L_old⁻¹` and fits `(α, β)` to the edge lengths with the positions
//! moving affinely; a full Newton iteration with minimum-norm SVD steps then
//! removes the remaining residual. The affine stage matters when the motif
//! is exactly a grid, where the full Jacobian is singular and minimum-norm
//! Newton steps alone would wander off the affine branch.

use nalgebra::{DMatrix, DVector};

use super::DeformError;
use crate::framework::Motif;

/// Newton iteration cap per step.
pub const MAX_NEWTON_ITERATIONS: usize = 25;
/// Maximum number of step halvings before giving up.
pub const MAX_HALVINGS: u32 = 8;
/// Convergence threshold on the residual (squared lengths and pin).
pub const NEWTON_TOL: f64 = 1e-12;
/// Relative singular-value cut-off for the least-squares Newton step.
const SVD_EPS: f64 = 1e-12;

pub fn skew(t: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, t.sin(), 1.0 - t.cos(), 1.0])
}

/// `V_β H_α S_t`.
pub fn flow_matrix(t: f64, alpha: f64, beta: f64) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_vec(vec![1.0 - alpha, 1.0 - beta])) * skew(t)
}

/// `(α, β)` keeping both lattice vectors of the unit square lattice at unit
/// length under `V_β H_α S_t`; this is the exact flow of the perfect grid.
pub fn analytic_grid_flow(t: f64) -> (f64, f64) {
    let (s, c) = (t.sin(), 1.0 - t.cos());
    let den = 1.0 - s * s * c * c;
    let x = ((1.0 - c * c) / den).sqrt();
    let y = ((1.0 - s * s) / den).sqrt();
    (1.0 - x, 1.0 - y)
}

/// Sampled flow-periodic deformation.
#[derive(Clone, Debug)]
pub struct DeformationPath {
    pub times: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub lattices: Vec<DMatrix<f64>>,
    /// Cartesian motif positions per time.
    pub positions: Vec<Vec<DVector<f64>>>,
    /// `max_e |ℓ_e(t) − ℓ_e(0)| / ℓ_e(0)` per time, recomputed independently
    /// of the solver.
    pub drift: Vec<f64>,
}

impl DeformationPath {
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().copied().fold(0.0, f64::max)
    }

    /// `t,alpha,beta,x1,y1,…,max_drift`, one line per sample.
    pub fn to_csv(&self) -> String {
        let n = self.positions.first().map_or(0, Vec::len);
        let mut head = vec!["t".to_string(), "alpha".into(), "beta".into()];
        for k in 1..=n {
            head.push(format!("x{k}"));
            head.push(format!("y{k}"));
        }
        head.push("max_drift".into());
        let mut out = head.join(",");
        out.push('\n');
        for i in 0..self.times.len() {
            let mut row = vec![fmt17(self.times[i]), fmt17(self.alpha[i]), fmt17(self.beta[i])];
            for p in &self.positions[i] {
                row.push(fmt17(p[0]));
                row.push(fmt17(p[1]));
            }
            row.push(fmt17(self.drift[i]));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Relative edge-length drift of `positions` under `lattice`.
pub fn length_drift(motif: &Motif, lattice: &DMatrix<f64>, positions: &[DVector<f64>]) -> f64 {
    let base = motif.lattice();
    motif
        .edges()
        .iter()
        .map(|e| {
            let off = DVector::from_iterator(e.offset.len(), e.offset.iter().map(|&o| o as f64));
            let l0 = (&motif.cartesian()[e.i] - (&motif.cartesian()[e.j] + base * &off)).norm();
            let l1 = (&positions[e.i] - (&positions[e.j] + lattice * &off)).norm();
            (l1 - l0).abs() / l0
        })
        .fold(0.0, f64::max)
}

struct System<'a> {
    motif: &'a Motif,
    l0: DMatrix<f64>,
    offsets: Vec<DVector<f64>>,
    targets: Vec<f64>,
    pin: usize,
    pin_at: DVector<f64>,
}

impl<'a> System<'a> {
    fn new(motif: &'a Motif, pin: usize) -> Self {
        let offsets: Vec<DVector<f64>> = motif
            .edges()
            .iter()
            .map(|e| DVector::from_iterator(2, e.offset.iter().map(|&o| o as f64)))
            .collect();
        let l0 = motif.lattice().clone();
        let targets = motif
            .edges()
            .iter()
            .zip(&offsets)
            .map(|(e, off)| (&motif.cartesian()[e.i] - (&motif.cartesian()[e.j] + &l0 * off)).norm_squared())
            .collect();
        Self { motif, l0, offsets, targets, pin, pin_at: motif.cartesian()[pin].clone() }
    }

    fn n(&self) -> usize {
        self.motif.vertex_count()
    }

    fn lattice(&self, t: f64, alpha: f64, beta: f64) -> DMatrix<f64> {
        flow_matrix(t, alpha, beta) * &self.l0
    }

    fn unpack(&self, x: &DVector<f64>) -> (Vec<DVector<f64>>, f64, f64) {
        let n = self.n();
        let p = (0..n).map(|k| x.rows(2 * k, 2).into_owned()).collect();
        (p, x[2 * n], x[2 * n + 1])
    }

    fn residual(&self, t: f64, x: &DVector<f64>) -> DVector<f64> {
        let (p, alpha, beta) = self.unpack(x);
        let l = self.lattice(t, alpha, beta);
        let m = self.motif.edge_count();
        let mut r = DVector::zeros(m + 2);
        for (k, e) in self.motif.edges().iter().enumerate() {
            let v = &p[e.i] - (&p[e.j] + &l * &self.offsets[k]);
            r[k] = v.norm_squared() - self.targets[k];
        }
        r.rows_mut(m, 2).copy_from(&(&p[self.pin] - &self.pin_at));
        r
    }

    fn jacobian(&self, t: f64, x: &DVector<f64>) -> DMatrix<f64> {
        let (p, alpha, beta) = self.unpack(x);
        let n = self.n();
        let m = self.motif.edge_count();
        let s = skew(t) * &self.l0;
        let l = flow_matrix(t, alpha, beta) * &self.l0;
        // V_β H_α = diag(1−α, 1−β), so α scales the first row and β the second.
        let dl_da = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 0.0])) * &s;
        let dl_db = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, -1.0])) * &s;
        let mut j = DMatrix::zeros(m + 2, 2 * n + 2);
        for (k, e) in self.motif.edges().iter().enumerate() {
            let v = &p[e.i] - (&p[e.j] + &l * &self.offsets[k]);
            for q in 0..2 {
                j[(k, 2 * e.i + q)] += 2.0 * v[q];
                j[(k, 2 * e.j + q)] -= 2.0 * v[q];
            }
            j[(k, 2 * n)] = -2.0 * v.dot(&(&dl_da * &self.offsets[k]));
            j[(k, 2 * n + 1)] = -2.0 * v.dot(&(&dl_db * &self.offsets[k]));
        }
        j[(m, 2 * self.pin)] = 1.0;
        j[(m + 1, 2 * self.pin + 1)] = 1.0;
        j
    }

    /// Positions moved by `L_new L_old⁻¹` about the pinned vertex.
    fn transport(&self, x: &DVector<f64>, t_old: f64, t: f64, alpha: f64, beta: f64) -> DVector<f64> {
        let (p, a0, b0) = self.unpack(x);
        let map = self.lattice(t, alpha, beta) * self.lattice(t_old, a0, b0).try_inverse().expect("flow keeps the lattice regular");
        let mut out = DVector::zeros(x.len());
        for (k, pk) in p.iter().enumerate() {
            let moved = &self.pin_at + &map * (pk - &p[self.pin]);
            out.rows_mut(2 * k, 2).copy_from(&moved);
        }
        out[2 * self.n()] = alpha;
        out[2 * self.n() + 1] = beta;
        out
    }

    /// Gauss–Newton over `(α, β)` with positions slaved to the affine transport.
    fn affine_stage(&self, x: &DVector<f64>, t_old: f64, t: f64) -> DVector<f64> {
        let n = self.n();
        let (mut alpha, mut beta) = (x[2 * n], x[2 * n + 1]);
        let h = 1e-7;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let y = self.transport(x, t_old, t, alpha, beta);
            let r = self.residual(t, &y);
            if r.amax() < NEWTON_TOL {
                break;
            }
            let ra = self.residual(t, &self.transport(x, t_old, t, alpha + h, beta));
            let rb = self.residual(t, &self.transport(x, t_old, t, alpha, beta + h));
            let mut j = DMatrix::zeros(r.len(), 2);
            j.set_column(0, &((ra - &r) / h));
            j.set_column(1, &((rb - &r) / h));
            let Ok(step) = j.svd(true, true).solve(&(-&r), SVD_EPS) else { break };
            if !step.iter().all(|v| v.is_finite()) {
                break;
            }
            alpha += step[0];
            beta += step[1];
            if step.amax() < 1e-15 {
                break;
            }
        }
        self.transport(x, t_old, t, alpha, beta)
    }

    fn newton(&self, t: f64, mut x: DVector<f64>) -> Option<DVector<f64>> {
        for _ in 0..=MAX_NEWTON_ITERATIONS {
            let r = self.residual(t, &x);
            if !r.iter().all(|v| v.is_finite()) {
                return None;
            }
            if r.amax() < NEWTON_TOL {
                return Some(x);
            }
            let j = self.jacobian(t, &x);
            let scale = j.amax().max(1.0);
            let step = j.svd(true, true).solve(&(-&r), SVD_EPS * scale).ok()?;
            x += step;
        }
        None
    }
}

/// Follows the flow over `t ∈ [0, t_max]`, reporting `steps + 1` samples.
/// Vertex `pin` is held fixed; rotations are not free because the lattice
/// is prescribed by the flow, so no further pin is needed.
pub fn flow_periodic_deform(motif: &Motif, t_max: f64, steps: usize, pin: usize) -> Result<DeformationPath, DeformError> {
    if motif.dimension() != 2 {
        return Err(DeformError::Dimension(motif.dimension()));
    }
    if steps == 0 || !t_max.is_finite() {
        return Err(DeformError::Schedule(format!("need at least one step and a finite t_max (steps={steps}, t_max={t_max})")));
    }
    if pin >= motif.vertex_count() {
        return Err(DeformError::Pin { pin, count: motif.vertex_count() });
    }
    let sys = System::new(motif, pin);
    let n = motif.vertex_count();
    let mut x = DVector::zeros(2 * n + 2);
    for (k, p) in motif.cartesian().iter().enumerate() {
        x.rows_mut(2 * k, 2).copy_from(p);
    }

    let mut path = DeformationPath {
        times: Vec::new(),
        alpha: Vec::new(),
        beta: Vec::new(),
        lattices: Vec::new(),
        positions: Vec::new(),
        drift: Vec::new(),
    };
    let record = |path: &mut DeformationPath, t: f64, x: &DVector<f64>| {
        let (p, a, b) = sys.unpack(x);
        let l = sys.lattice(t, a, b);
        path.drift.push(length_drift(motif, &l, &p));
        path.times.push(t);
        path.alpha.push(a);
        path.beta.push(b);
        path.lattices.push(l);
        path.positions.push(p);
    };
    record(&mut path, 0.0, &x);

    let mut t = 0.0;
    for k in 1..=steps {
        let target = t_max * k as f64 / steps as f64;
        let mut dt = target - t;
        let mut halvings = 0;
        while t < target {
            let t_next = if (target - t) <= dt { target } else { t + dt };
            let guess = sys.affine_stage(&x, t, t_next);
            match sys.newton(t_next, guess) {
                Some(next) => {
                    x = next;
                    t = t_next;
                }
                None => {
                    halvings += 1;
                    if halvings > MAX_HALVINGS {
                        return Err(DeformError::ContinuationStalled { last_t: t, path: Box::new(path) });
                    }
                    dt *= 0.5;
                }
            }
        }
        record(&mut path, target, &x);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::catalog::motif;

    #[test]
    fn analytic_flow_keeps_unit_vectors() {
        for t in [0.0, 0.1, 0.3] {
            let (a, b) = analytic_grid_flow(t);
            let l = flow_matrix(t, a, b);
            assert!((l.column(0).norm() - 1.0).abs() < 1e-14);
            assert!((l.column(1).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_at_zero() {
        let m = motif("quadgrid", Some(1)).unwrap();
        let path = flow_periodic_deform(&m, 0.1, 1, 0).unwrap();
        assert_eq!((path.alpha[0], path.beta[0]), (0.0, 0.0));
        assert_eq!(path.positions[0], m.cartesian().to_vec());
    }

    #[test]
    fn jacobian_matches_differences() {
        let m = motif("quadgrid", Some(2)).unwrap();
        let sys = System::new(&m, 0);
        let mut x = DVector::from_fn(10, |k, _| 0.1 + 0.37 * (k as f64).sin());
        x[8] = 0.05;
        x[9] = -0.03;
        let t = 0.17;
        let j = sys.jacobian(t, &x);
        let h = 1e-6;
        for c in 0..10 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[c] += h;
            xm[c] -= h;
            let col = (sys.residual(t, &xp) - sys.residual(t, &xm)) / (2.0 * h);
            assert!((col - j.column(c)).amax() < 1e-8, "column {c}");
        }
    }

    #[test]
    fn rejects_space_motifs() {
        let m = motif("kagome-net", None).unwrap();
        assert!(matches!(flow_periodic_deform(&m, 0.1, 2, 0), Err(DeformError::Dimension(3))));
    }
}
