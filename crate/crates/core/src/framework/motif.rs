use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use super::FrameworkError;

/// Motif edge from vertex `i` in cell `0` to vertex `j` in cell `offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotifEdge {
    pub i: usize,
    pub j: usize,
    pub offset: Vec<i64>,
}

impl MotifEdge {
    pub fn new(i: usize, j: usize, offset: &[i64]) -> Self {
        Self { i, j, offset: offset.to_vec() }
    }

    pub fn is_reflexive(&self) -> bool {
        self.i == self.j
    }

    pub fn is_internal(&self) -> bool {
        self.offset.iter().all(|&o| o == 0)
    }
}

/// Finite generating data of a crystal framework: lattice basis, vertices of
/// one unit cell and edges with integer cell offsets.
///
/// Vertices are stored both in lattice-fractional coordinates (in `[0,1)^d`)
/// and in Cartesian coordinates `p = L · f`, where the columns of `L` are the
/// lattice basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Motif {
    dimension: usize,
    lattice: DMatrix<f64>,
    fractional: Vec<DVector<f64>>,
    cartesian: Vec<DVector<f64>>,
    edges: Vec<MotifEdge>,
}

impl Motif {
    /// `lattice_basis[q]` is the `q`-th translation generator.
    pub fn new(
        dimension: usize,
        lattice_basis: &[Vec<f64>],
        fractional: &[Vec<f64>],
        edges: Vec<MotifEdge>,
    ) -> Result<Self, FrameworkError> {
        if !(2..=3).contains(&dimension) {
            return Err(FrameworkError::UnsupportedDimension(dimension));
        }
        if lattice_basis.len() != dimension {
            return Err(FrameworkError::DimensionMismatch { expected: dimension, found: lattice_basis.len() });
        }
        for b in lattice_basis {
            check_len(b.len(), dimension)?;
        }
        let lattice = DMatrix::from_fn(dimension, dimension, |r, c| lattice_basis[c][r]);
        if lattice.iter().any(|x| !x.is_finite()) {
            return Err(FrameworkError::NonFinite);
        }
        let det = lattice.determinant();
        let scale = lattice.amax().powi(dimension as i32);
        if det.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(FrameworkError::DegenerateLattice(det));
        }
        if fractional.is_empty() {
            return Err(FrameworkError::EmptyMotif);
        }
        let mut frac = Vec::with_capacity(fractional.len());
        for (v, f) in fractional.iter().enumerate() {
            check_len(f.len(), dimension)?;
            for &x in f {
                if !x.is_finite() {
                    return Err(FrameworkError::NonFinite);
                }
                if !(0.0..1.0).contains(&x) {
                    return Err(FrameworkError::FractionalOutOfRange { vertex: v, value: x });
                }
            }
            frac.push(DVector::from_column_slice(f));
        }
        let cartesian = frac.iter().map(|f| &lattice * f).collect();
        let motif = Self { dimension, lattice, fractional: frac, cartesian, edges };
        motif.validate_edges()?;
        motif.check_connected()?;
        Ok(motif)
    }

    /// Builds a motif from Cartesian vertex positions.
    pub fn from_cartesian(
        dimension: usize,
        lattice_basis: &[Vec<f64>],
        cartesian: &[Vec<f64>],
        edges: Vec<MotifEdge>,
    ) -> Result<Self, FrameworkError> {
        if lattice_basis.len() != dimension {
            return Err(FrameworkError::DimensionMismatch { expected: dimension, found: lattice_basis.len() });
        }
        let lattice = DMatrix::from_fn(dimension, dimension, |r, c| lattice_basis[c].get(r).copied().unwrap_or(f64::NAN));
        let inv = lattice
            .clone()
            .try_inverse()
            .ok_or(FrameworkError::DegenerateLattice(lattice.determinant()))?;
        let fractional: Vec<Vec<f64>> = cartesian
            .iter()
            .map(|p| {
                check_len(p.len(), dimension)?;
                let f = &inv * DVector::from_column_slice(p);
                // Snap rounding noise so that e.g. 0.9999999999999999 stays inside the cell.
                Ok(f.iter().map(|&x| if x.abs() < 1e-14 { 0.0 } else { x }).collect())
            })
            .collect::<Result<_, FrameworkError>>()?;
        Self::new(dimension, lattice_basis, &fractional, edges)
    }

    fn validate_edges(&self) -> Result<(), FrameworkError> {
        let n = self.vertex_count();
        let scale = self.lattice.amax();
        for (k, e) in self.edges.iter().enumerate() {
            for v in [e.i, e.j] {
                if v >= n {
                    return Err(FrameworkError::VertexOutOfRange { edge: k, vertex: v, count: n });
                }
            }
            check_len(e.offset.len(), self.dimension)?;
            if e.is_reflexive() && e.is_internal() {
                return Err(FrameworkError::ReflexiveZeroOffset { edge: k, vertex: e.i });
            }
            if self.edge_vector(k).norm() <= 1e-14 * scale {
                return Err(FrameworkError::ZeroLengthEdge { edge: k });
            }
        }
        Ok(())
    }

    /// Connectivity of the infinite framework: the quotient multigraph must be
    /// connected and the cycle gains must generate all of `Z^d`.
    fn check_connected(&self) -> Result<(), FrameworkError> {
        let n = self.vertex_count();
        let d = self.dimension;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.i].push((e.j, k));
            if e.i != e.j {
                adj[e.j].push((e.i, k));
            }
        }
        let mut potential: Vec<Option<Vec<i64>>> = vec![None; n];
        let mut tree_edge = vec![false; self.edges.len()];
        potential[0] = Some(vec![0; d]);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let pv = potential[v].clone().expect("queued vertices carry a potential");
            for &(w, k) in &adj[v] {
                if potential[w].is_some() {
                    continue;
                }
                let e = &self.edges[k];
                // Walking e forwards adds its offset, backwards subtracts it.
                let sign = if e.i == v { 1 } else { -1 };
                potential[w] = Some(pv.iter().zip(&e.offset).map(|(a, o)| a + sign * o).collect());
                tree_edge[k] = true;
                queue.push_back(w);
            }
        }
        if let Some(v) = potential.iter().position(Option::is_none) {
            return Err(FrameworkError::Disconnected(format!("quotient graph does not reach vertex {v}")));
        }
        let gains: Vec<Vec<i64>> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| !tree_edge[*k])
            .map(|(_, e)| {
                let pi = potential[e.i].as_ref().unwrap();
                let pj = potential[e.j].as_ref().unwrap();
                (0..d).map(|q| pi[q] + e.offset[q] - pj[q]).collect()
            })
            .collect();
        match lattice_index(&gains, d) {
            Some(1) => Ok(()),
            Some(index) => Err(FrameworkError::Disconnected(format!(
                "cycle gains generate a sublattice of index {index}"
            ))),
            None => Err(FrameworkError::Disconnected("cycle gains do not span Z^d".into())),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Lattice matrix whose columns are the translation generators.
    pub fn lattice(&self) -> &DMatrix<f64> {
        &self.lattice
    }

    pub fn lattice_basis(&self) -> Vec<Vec<f64>> {
        (0..self.dimension).map(|c| self.lattice.column(c).iter().copied().collect()).collect()
    }

    pub fn fractional(&self) -> &[DVector<f64>] {
        &self.fractional
    }

    pub fn cartesian(&self) -> &[DVector<f64>] {
        &self.cartesian
    }

    pub fn edges(&self) -> &[MotifEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.fractional.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Cartesian position of vertex `kappa` translated into `cell`.
    pub fn position(&self, kappa: usize, cell: &[i64]) -> DVector<f64> {
        &self.cartesian[kappa] + self.translation(cell)
    }

    /// `L · n` for an integer cell index `n`.
    pub fn translation(&self, cell: &[i64]) -> DVector<f64> {
        let n = DVector::from_iterator(self.dimension, cell.iter().map(|&c| c as f64));
        &self.lattice * n
    }

    /// `v_e = p_i − (p_j + L·δ)`.
    pub fn edge_vector(&self, edge: usize) -> DVector<f64> {
        let e = &self.edges[edge];
        &self.cartesian[e.i] - self.position(e.j, &e.offset)
    }

    /// Largest absolute offset component over all edges.
    pub fn max_offset(&self) -> i64 {
        self.edges.iter().flat_map(|e| e.offset.iter().map(|o| o.abs())).max().unwrap_or(0)
    }

    /// Quotient multigraph (offsets dropped).
    pub fn quotient_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }

    /// The motif with the listed edges removed. Fails if the result is no longer connected.
    pub fn without_edges(&self, remove: &[usize]) -> Result<Self, FrameworkError> {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| !remove.contains(k))
            .map(|(_, e)| e.clone())
            .collect();
        self.with_edges(edges)
    }

    /// Same vertices and lattice with a different edge list.
    pub fn with_edges(&self, edges: Vec<MotifEdge>) -> Result<Self, FrameworkError> {
        let motif = Self { edges, ..self.clone() };
        motif.validate_edges()?;
        motif.check_connected()?;
        Ok(motif)
    }
}

fn check_len(found: usize, expected: usize) -> Result<(), FrameworkError> {
    if found == expected {
        Ok(())
    } else {
        Err(FrameworkError::DimensionMismatch { expected, found })
    }
}

/// Index of the sublattice of `Z^d` generated by `vectors`, or `None` if they
/// do not span a full-rank sublattice. Uses integer row reduction.
pub(crate) fn lattice_index(vectors: &[Vec<i64>], d: usize) -> Option<i64> {
    let mut rows: Vec<Vec<i64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut pivot_row = 0;
    let mut index: i64 = 1;
    for col in 0..d {
        loop {
            // Smallest nonzero entry in this column (at or below pivot_row) becomes the pivot.
            let best = (pivot_row..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { return None };
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col] / rows[pivot_row][col];
                    for c in col..d {
                        rows[r][c] -= q * rows[pivot_row][c];
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        index *= rows[pivot_row][col].abs();
        pivot_row += 1;
    }
    Some(index)
}
