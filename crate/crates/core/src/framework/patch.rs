use super::{FiniteFramework, FrameworkError, Graph, Motif};

/// Finite truncation of a crystal framework: all translates of the motif
/// vertices into the cells `n` with `|n_q| ≤ K`, and every motif edge whose two
/// endpoint cells lie in that box.
///
/// Vertex `(κ, n)` has index `κ·(2K+1)^d + c(n)` where `c` enumerates the cell
/// box lexicographically. Edges are listed cell by cell, motif order inside a cell.
#[derive(Clone, Debug)]
pub struct PatchFramework {
    motif: Motif,
    radius: usize,
    framework: FiniteFramework,
    edge_origin: Vec<(usize, Vec<i64>)>,
}

impl PatchFramework {
    pub fn new(motif: &Motif, radius: usize) -> Result<Self, FrameworkError> {
        let d = motif.dimension();
        let cells = cell_box(d, radius);
        let per_kappa = cells.len();
        let mut placement = Vec::with_capacity(motif.vertex_count() * per_kappa);
        for kappa in 0..motif.vertex_count() {
            for n in &cells {
                placement.push(motif.position(kappa, n));
            }
        }
        let mut edges = Vec::new();
        let mut edge_origin = Vec::new();
        for n in &cells {
            for (k, e) in motif.edges().iter().enumerate() {
                let target: Vec<i64> = n.iter().zip(&e.offset).map(|(a, b)| a + b).collect();
                if !in_box(&target, radius) {
                    continue;
                }
                let a = index_of(e.i, n, radius, per_kappa);
                let b = index_of(e.j, &target, radius, per_kappa);
                edges.push((a, b));
                edge_origin.push((k, n.clone()));
            }
        }
        let graph = Graph::new_oriented(placement.len(), edges)?;
        let framework = FiniteFramework::new(graph, placement, d)?;
        Ok(Self { motif: motif.clone(), radius, framework, edge_origin })
    }

    pub fn motif(&self) -> &Motif {
        &self.motif
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn framework(&self) -> &FiniteFramework {
        &self.framework
    }

    /// Number of cells in the box, `(2K+1)^d`.
    pub fn cell_count(&self) -> usize {
        (2 * self.radius + 1).pow(self.motif.dimension() as u32)
    }

    /// Cells of the box in index order.
    pub fn cells(&self) -> Vec<Vec<i64>> {
        cell_box(self.motif.dimension(), self.radius)
    }

    /// Index of vertex `(κ, n)`, if `n` lies in the box.
    pub fn vertex_index(&self, kappa: usize, cell: &[i64]) -> Option<usize> {
        (kappa < self.motif.vertex_count() && in_box(cell, self.radius))
            .then(|| index_of(kappa, cell, self.radius, self.cell_count()))
    }

    /// `(κ, n)` of a patch vertex.
    pub fn vertex_label(&self, index: usize) -> (usize, Vec<i64>) {
        let per = self.cell_count();
        (index / per, cell_of(index % per, self.motif.dimension(), self.radius))
    }

    /// Motif edge and base cell of every patch edge.
    pub fn edge_origin(&self) -> &[(usize, Vec<i64>)] {
        &self.edge_origin
    }

    /// Index of the patch edge generated by motif edge `edge` in `cell`.
    pub fn edge_index(&self, edge: usize, cell: &[i64]) -> Option<usize> {
        self.edge_origin.iter().position(|(k, n)| *k == edge && n.as_slice() == cell)
    }
}

pub(crate) fn in_box(cell: &[i64], radius: usize) -> bool {
    cell.iter().all(|c| c.unsigned_abs() as usize <= radius)
}

fn cell_box(d: usize, radius: usize) -> Vec<Vec<i64>> {
    let side = 2 * radius + 1;
    (0..side.pow(d as u32)).map(|k| cell_of(k, d, radius)).collect()
}

fn cell_of(mut k: usize, d: usize, radius: usize) -> Vec<i64> {
    let side = 2 * radius + 1;
    let mut cell = vec![0; d];
    for q in (0..d).rev() {
        cell[q] = (k % side) as i64 - radius as i64;
        k /= side;
    }
    cell
}

fn index_of(kappa: usize, cell: &[i64], radius: usize, per_kappa: usize) -> usize {
    let side = 2 * radius as i64 + 1;
    let c = cell.iter().fold(0i64, |acc, &x| acc * side + x + radius as i64);
    kappa * per_kappa + c as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::MotifEdge;

    fn grid_min() -> Motif {
        Motif::new(
            2,
            &[vec![1.0, 0.0], vec![0.0, 1.0]],
            &[vec![0.0, 0.0]],
            vec![MotifEdge::new(0, 0, &[1, 0]), MotifEdge::new(0, 0, &[0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn grid_patch_counts() {
        let p = PatchFramework::new(&grid_min(), 1).unwrap();
        assert_eq!(p.framework().vertex_count(), 9);
        assert_eq!(p.framework().edge_count(), 12);
    }

    #[test]
    fn labels_round_trip() {
        let p = PatchFramework::new(&grid_min(), 2).unwrap();
        for v in 0..p.framework().vertex_count() {
            let (k, n) = p.vertex_label(v);
            assert_eq!(p.vertex_index(k, &n), Some(v));
            assert_eq!(p.framework().placement()[v], p.motif().position(k, &n));
        }
        assert_eq!(p.vertex_index(0, &[3, 0]), None);
    }
}
