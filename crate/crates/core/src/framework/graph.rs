use std::collections::{HashSet, VecDeque};

use super::FrameworkError;

/// A finite simple graph with an ordered edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a simple graph, storing each edge as `(min, max)`.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, FrameworkError> {
        let edges = edges.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        Self::new_oriented(vertex_count, edges)
    }

    /// Builds a simple graph keeping the given orientation of every edge.
    ///
    /// Patches of motifs use this so that rows keep the motif's edge direction.
    pub fn new_oriented(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, FrameworkError> {
        if vertex_count == 0 {
            return Err(FrameworkError::EmptyGraph);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (k, &(i, j)) in edges.iter().enumerate() {
            for v in [i, j] {
                if v >= vertex_count {
                    return Err(FrameworkError::VertexOutOfRange { edge: k, vertex: v, count: vertex_count });
                }
            }
            if i == j {
                return Err(FrameworkError::Loop { edge: k, vertex: i });
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(FrameworkError::DuplicateEdge { edge: k, i, j });
            }
        }
        Ok(Self { vertex_count, edges })
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self, FrameworkError> {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Subgraph keeping the edges with the given indices (vertex set unchanged).
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        Graph { vertex_count: self.vertex_count, edges: keep.iter().map(|&k| self.edges[k]).collect() }
    }
}
