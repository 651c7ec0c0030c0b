use nalgebra::{DMatrix, DVector};

use super::SymbolError;
use crate::framework::{Motif, PatchFramework};

const MATCH_TOL: f64 = 1e-9;

/// An isometry `x ↦ A x + b` of a crystal framework, with the induced
/// permutations of motif vertices and edges.
///
/// Vertex `κ` in cell `n` maps to `vertex_map[κ].0` in cell
/// `vertex_map[κ].1 + M n`, where `M = L⁻¹ A L` is the integer action on cell
/// indices; edges map the same way through `edge_map`.
#[derive(Clone, Debug)]
pub struct SymmetryElement {
    pub orthogonal: DMatrix<f64>,
    pub translation: DVector<f64>,
    pub lattice_action: DMatrix<i64>,
    pub vertex_map: Vec<(usize, Vec<i64>)>,
    pub edge_map: Vec<(usize, Vec<i64>)>,
}

fn not_sym(msg: impl Into<String>) -> SymbolError {
    SymbolError::NotASymmetry(msg.into())
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn apply(m: &DMatrix<i64>, n: &[i64]) -> Vec<i64> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)] * n[c]).sum()).collect()
}

impl SymmetryElement {
    /// Derives the vertex and edge permutations of `x ↦ A x + b` on `motif`,
    /// failing if the map does not carry the framework onto itself.
    pub fn from_isometry(motif: &Motif, orthogonal: DMatrix<f64>, translation: DVector<f64>) -> Result<Self, SymbolError> {
        let d = motif.dimension();
        if orthogonal.shape() != (d, d) || translation.len() != d {
            return Err(not_sym(format!("isometry must act on R^{d}")));
        }
        if (orthogonal.transpose() * &orthogonal - DMatrix::identity(d, d)).amax() > MATCH_TOL {
            return Err(not_sym("linear part is not orthogonal"));
        }
        let l = motif.lattice();
        let l_inv = l.clone().try_inverse().expect("motif lattice is invertible");
        let m_real = &l_inv * &orthogonal * l;
        if m_real.iter().any(|x| (x - x.round()).abs() > MATCH_TOL) {
            return Err(not_sym("linear part does not preserve the lattice"));
        }
        let lattice_action = m_real.map(|x| x.round() as i64);

        // Locate the image of a point as (vertex, cell).
        let locate = |x: &DVector<f64>| -> Option<(usize, Vec<i64>)> {
            let f = &l_inv * x;
            let cell: Vec<i64> = f.iter().map(|v| (v + MATCH_TOL).floor() as i64).collect();
            let frac: Vec<f64> = f.iter().zip(&cell).map(|(v, &c)| v - c as f64).collect();
            motif.fractional().iter().position(|g| g.iter().zip(&frac).all(|(a, b)| (a - b).abs() < MATCH_TOL)).map(|k| (k, cell))
        };

        let mut vertex_map = Vec::with_capacity(motif.vertex_count());
        for (k, p) in motif.cartesian().iter().enumerate() {
            let image = &orthogonal * p + &translation;
            vertex_map.push(locate(&image).ok_or_else(|| not_sym(format!("vertex {k} maps to a non-vertex")))?);
        }

        let mut edge_map = Vec::with_capacity(motif.edge_count());
        for (k, e) in motif.edges().iter().enumerate() {
            let (a, ca) = &vertex_map[e.i];
            let (b, cb0) = &vertex_map[e.j];
            let cb = add(cb0, &apply(&lattice_action, &e.offset));
            let forward = add(&cb, &ca.iter().map(|x| -x).collect::<Vec<_>>());
            let backward: Vec<i64> = forward.iter().map(|x| -x).collect();
            let found = motif.edges().iter().enumerate().find_map(|(t, f)| {
                if f.i == *a && f.j == *b && f.offset == forward {
                    Some((t, ca.clone()))
                } else if f.i == *b && f.j == *a && f.offset == backward {
                    Some((t, cb.clone()))
                } else {
                    None
                }
            });
            edge_map.push(found.ok_or_else(|| not_sym(format!("edge {k} maps to a non-edge")))?);
        }
        Ok(Self { orthogonal, translation, lattice_action, vertex_map, edge_map })
    }

    pub fn identity(motif: &Motif) -> Self {
        let d = motif.dimension();
        Self::from_isometry(motif, DMatrix::identity(d, d), DVector::zeros(d)).expect("identity is a symmetry")
    }

    /// Point inversion `x ↦ 2c − x`.
    pub fn inversion(motif: &Motif, centre: &DVector<f64>) -> Result<Self, SymbolError> {
        let d = motif.dimension();
        Self::from_isometry(motif, -DMatrix::<f64>::identity(d, d), centre * 2.0)
    }

    /// Rotation by `angle` about `centre` (planar motifs only).
    pub fn rotation(motif: &Motif, angle: f64, centre: &DVector<f64>) -> Result<Self, SymbolError> {
        if motif.dimension() != 2 {
            return Err(not_sym("rotations are planar"));
        }
        let (s, c) = angle.sin_cos();
        let a = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let b = centre - &a * centre;
        Self::from_isometry(motif, a, b)
    }

    fn vertex_image(&self, kappa: usize, n: &[i64]) -> (usize, Vec<i64>) {
        let (k, c) = &self.vertex_map[kappa];
        (*k, add(c, &apply(&self.lattice_action, n)))
    }

    fn edge_image(&self, edge: usize, n: &[i64]) -> (usize, Vec<i64>) {
        let (k, c) = &self.edge_map[edge];
        (*k, add(c, &apply(&self.lattice_action, n)))
    }
}

/// Largest entry of `ρ_e(g) R − R ρ̃_v(g)` on the patch of radius `radius`,
/// relative to the largest entry of `R`.
///
/// `ρ̃_v` moves the displacement of a vertex to its image vertex, rotated by
/// `A`; `ρ_e` moves edge rows to their image edges. Only rows whose preimage
/// edge lies in the patch are compared, so truncation never contributes.
pub fn verify_symmetry_commutation(motif: &Motif, g: &SymmetryElement, radius: usize) -> Result<f64, SymbolError> {
    let d = motif.dimension();
    let patch = PatchFramework::new(motif, radius)?;
    let fw = patch.framework();
    let r = fw.rigidity_matrix();
    let (ne, nv) = (fw.edge_count(), fw.vertex_count());

    let mut rho_v = DMatrix::<f64>::zeros(d * nv, d * nv);
    for v in 0..nv {
        let (kappa, n) = patch.vertex_label(v);
        let (k, m) = g.vertex_image(kappa, &n);
        if let Some(w) = patch.vertex_index(k, &m) {
            rho_v.view_mut((d * w, d * v), (d, d)).copy_from(&g.orthogonal);
        }
    }
    let mut rho_e = DMatrix::<f64>::zeros(ne, ne);
    let mut compared = Vec::new();
    for (e, (k, n)) in patch.edge_origin().iter().enumerate() {
        let (t, m) = g.edge_image(*k, n);
        if let Some(f) = patch.edge_index(t, &m) {
            rho_e[(f, e)] = 1.0;
            compared.push(f);
        }
    }
    let diff = &rho_e * &r - &r * &rho_v;
    let worst = compared.iter().map(|&f| diff.row(f).amax()).fold(0.0, f64::max);
    let scale = r.amax();
    Ok(if scale > 0.0 { worst / scale } else { worst })
}
