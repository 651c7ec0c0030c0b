use nalgebra::{DMatrix, DVector};

use super::{FrameworkError, Graph};
use crate::linalg::{self, RankAnalysis, DEFAULT_RANK_TOL};

/// A graph together with a placement of its vertices in `R^d`, `d ∈ {2, 3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFramework {
    graph: Graph,
    placement: Vec<DVector<f64>>,
    dimension: usize,
}

impl FiniteFramework {
    /// Validates dimensions and properness (no edge of zero length).
    pub fn new(graph: Graph, placement: Vec<DVector<f64>>, dimension: usize) -> Result<Self, FrameworkError> {
        if !(2..=3).contains(&dimension) {
            return Err(FrameworkError::UnsupportedDimension(dimension));
        }
        if placement.len() != graph.vertex_count() {
            return Err(FrameworkError::PlacementLength { expected: graph.vertex_count(), found: placement.len() });
        }
        for p in &placement {
            if p.len() != dimension {
                return Err(FrameworkError::DimensionMismatch { expected: dimension, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(FrameworkError::NonFinite);
            }
        }
        let scale = placement.iter().map(|p| p.amax()).fold(1.0, f64::max);
        for (k, &(i, j)) in graph.edges().iter().enumerate() {
            if (&placement[i] - &placement[j]).norm() <= 1e-14 * scale {
                return Err(FrameworkError::ZeroLengthEdge { edge: k });
            }
        }
        Ok(Self { graph, placement, dimension })
    }

    /// Convenience constructor from plain coordinate lists.
    pub fn from_points(graph: Graph, points: &[Vec<f64>]) -> Result<Self, FrameworkError> {
        let dimension = points.first().map(Vec::len).unwrap_or(2);
        let placement = points.iter().map(|p| DVector::from_column_slice(p)).collect();
        Self::new(graph, placement, dimension)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn placement(&self) -> &[DVector<f64>] {
        &self.placement
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Same graph, new placement.
    pub fn with_placement(&self, placement: Vec<DVector<f64>>) -> Result<Self, FrameworkError> {
        Self::new(self.graph.clone(), placement, self.dimension)
    }

    /// Whether the points affinely span `R^d` (i.e. do not lie in a hyperplane).
    pub fn spans_ambient_space(&self) -> bool {
        let n = self.placement.len();
        if n <= self.dimension {
            return false;
        }
        let base = &self.placement[0];
        let diffs = DMatrix::from_fn(n - 1, self.dimension, |r, c| self.placement[r + 1][c] - base[c]);
        linalg::rank(&diffs) == self.dimension
    }

    /// The `|E| × d|V|` rigidity matrix.
    ///
    /// The row of edge `(i, j)` holds `p_i − p_j` in the column block of `i` and
    /// `p_j − p_i` in the block of `j`.
    pub fn rigidity_matrix(&self) -> DMatrix<f64> {
        let d = self.dimension;
        let mut r = DMatrix::zeros(self.graph.edge_count(), d * self.graph.vertex_count());
        for (row, &(i, j)) in self.graph.edges().iter().enumerate() {
            let diff = &self.placement[i] - &self.placement[j];
            for a in 0..d {
                r[(row, d * i + a)] = diff[a];
                r[(row, d * j + a)] = -diff[a];
            }
        }
        r
    }

    pub fn rank_analysis(&self, rel_tol: f64) -> RankAnalysis<f64> {
        linalg::analyze(&self.rigidity_matrix(), rel_tol)
    }

    /// Orthonormal basis of the infinitesimal flexes, `ker R`.
    pub fn flex_space(&self) -> Vec<DVector<f64>> {
        self.rank_analysis(DEFAULT_RANK_TOL).kernel
    }

    /// Orthonormal basis of the self-stresses, `ker Rᵗ`.
    pub fn stress_space(&self) -> Vec<DVector<f64>> {
        linalg::cokernel(&self.rigidity_matrix(), DEFAULT_RANK_TOL)
    }

    /// Largest `|⟨p_i − p_j, u_i − u_j⟩|` over all edges.
    pub fn flex_residual(&self, u: &DVector<f64>) -> f64 {
        (self.rigidity_matrix() * u).amax()
    }

    /// Longest edge, used to scale tolerances.
    pub fn length_scale(&self) -> f64 {
        self.edge_lengths().into_iter().fold(0.0, f64::max)
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.graph
            .edges()
            .iter()
            .map(|&(i, j)| (&self.placement[i] - &self.placement[j]).norm())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(points: &[[f64; 2]], edges: &[(usize, usize)]) -> FiniteFramework {
        let pts: Vec<Vec<f64>> = points.iter().map(|p| p.to_vec()).collect();
        FiniteFramework::from_points(Graph::new(points.len(), edges.to_vec()).unwrap(), &pts).unwrap()
    }

    #[test]
    fn single_edge_row() {
        let f = fw(&[[0.0, 0.0], [1.0, 0.0]], &[(0, 1)]);
        let r = f.rigidity_matrix();
        assert_eq!(r.as_slice(), &[-1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_length_edge_is_rejected() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let err = FiniteFramework::from_points(g, &[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap_err();
        assert_eq!(err, FrameworkError::ZeroLengthEdge { edge: 0 });
    }

    #[test]
    fn triangle_is_rigid_and_stress_free() {
        let f = fw(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(f.rank_analysis(DEFAULT_RANK_TOL).rank, 3);
        assert_eq!(f.flex_space().len(), 3);
        assert!(f.stress_space().is_empty());
    }

    #[test]
    fn unit_square_four_cycle() {
        let f = fw(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let a = f.rank_analysis(DEFAULT_RANK_TOL);
        assert_eq!(a.rank, 4);
        assert_eq!(a.nullity(), 4);
        for u in &a.kernel {
            assert!(f.flex_residual(u) < 1e-12);
        }
    }

    #[test]
    fn collinear_chain_has_no_stress() {
        let f = fw(&[[0.0, 0.0], [1.0, 0.0], [2.5, 0.0]], &[(0, 1), (1, 2)]);
        assert!(f.stress_space().is_empty());
        assert!(!f.spans_ambient_space());
        // Closing the chain makes the collinearity relation a stress.
        let closed = fw(&[[0.0, 0.0], [1.0, 0.0], [2.5, 0.0]], &[(0, 1), (1, 2), (0, 2)]);
        let w = closed.stress_space();
        assert_eq!(w.len(), 1);
        assert!((closed.rigidity_matrix().transpose() * &w[0]).amax() < 1e-12);
    }
}
