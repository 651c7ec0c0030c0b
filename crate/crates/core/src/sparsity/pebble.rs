use std::collections::BTreeSet;
use std::fmt;

use super::SparsityError;

/// Outcome of a `(k, ℓ)` pebble game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PebbleVerdict {
    /// Every edge accepted and `|E| = k|V| − ℓ`.
    Tight,
    /// Every edge accepted, fewer than `k|V| − ℓ` edges.
    SparseNotTight,
    /// At least one edge rejected.
    Dependent,
}

impl fmt::Display for PebbleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PebbleVerdict::Tight => "tight",
            PebbleVerdict::SparseNotTight => "sparse-not-tight",
            PebbleVerdict::Dependent => "dependent",
        })
    }
}

/// Vertex set of a `(k, ℓ)`-tight subgraph of the accepted edges, with those
/// accepted edges it spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightComponent {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PebbleResult {
    pub k: usize,
    pub l: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Indices into the input edge list, in processing order.
    pub accepted: Vec<usize>,
    pub rejected: Vec<usize>,
    pub verdict: PebbleVerdict,
    /// Maximal tight components of the accepted subgraph.
    pub components: Vec<TightComponent>,
}

/// Pebble-game state: free pebbles per vertex and an orientation of the
/// accepted edges (each edge points away from the vertex whose pebble covers it).
#[derive(Clone, Debug)]
pub struct PebbleState {
    pub pebbles: Vec<usize>,
    /// `(tail, head)` per accepted edge, `None` for edges not (yet) accepted.
    pub orientation: Vec<Option<(usize, usize)>>,
    out: Vec<Vec<usize>>,
    k: usize,
}

impl PebbleState {
    fn new(n: usize, m: usize, k: usize) -> Self {
        Self { pebbles: vec![k; n], orientation: vec![None; m], out: vec![Vec::new(); n], k }
    }

    /// Depth-first search from `start` along out-edges for a free pebble on a
    /// vertex outside `blocked`; on success the path is reversed and the pebble
    /// arrives at `start`. Neighbours are explored in increasing index order.
    fn fetch(&mut self, start: usize, blocked: &[usize]) -> bool {
        let n = self.pebbles.len();
        let mut seen = vec![false; n];
        for &b in blocked {
            seen[b] = true;
        }
        seen[start] = true;
        // `via[w]` is the edge used to reach `w`.
        let mut via = vec![usize::MAX; n];
        let mut stack = vec![start];
        let mut found = None;
        'search: while let Some(x) = stack.pop() {
            let mut next: Vec<(usize, usize)> = self.out[x]
                .iter()
                .map(|&e| (self.orientation[e].expect("oriented").1, e))
                .collect();
            next.sort_unstable();
            // Reverse so the lowest index is popped first.
            for &(w, e) in next.iter().rev() {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                via[w] = e;
                if self.pebbles[w] > 0 {
                    found = Some(w);
                    break 'search;
                }
                stack.push(w);
            }
        }
        let Some(mut w) = found else { return false };
        self.pebbles[w] -= 1;
        self.pebbles[start] += 1;
        while w != start {
            let e = via[w];
            let (tail, head) = self.orientation[e].expect("oriented");
            debug_assert_eq!(head, w);
            self.reorient(e, head, tail);
            w = tail;
        }
        true
    }

    fn reorient(&mut self, e: usize, tail: usize, head: usize) {
        if let Some((old_tail, _)) = self.orientation[e] {
            self.out[old_tail].retain(|&x| x != e);
        }
        self.orientation[e] = Some((tail, head));
        self.out[tail].push(e);
    }

    /// Gathers up to `target` pebbles on `{u, v}`.
    fn gather(&mut self, u: usize, v: usize, target: usize) -> bool {
        loop {
            let have = if u == v { self.pebbles[u] } else { self.pebbles[u] + self.pebbles[v] };
            if have >= target {
                return true;
            }
            let blocked = [u, v];
            if self.pebbles[u] < self.k && self.fetch(u, &blocked) {
                continue;
            }
            if u != v && self.pebbles[v] < self.k && self.fetch(v, &blocked) {
                continue;
            }
            return false;
        }
    }

    /// Vertices reachable from `{u, v}` along out-edges.
    fn reach(&self, u: usize, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([u, v]);
        let mut stack = vec![u, v];
        while let Some(x) = stack.pop() {
            for &e in &self.out[x] {
                let w = self.orientation[e].expect("oriented").1;
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Vertices that cannot reach a free pebble outside `{u, v}`.
    fn closed_set(&self, u: usize, v: usize) -> BTreeSet<usize> {
        let n = self.pebbles.len();
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (tail, head) in self.orientation.iter().flatten() {
            into[*head].push(*tail);
        }
        let mut marked = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&x| x != u && x != v && self.pebbles[x] > 0).collect();
        for &x in &stack {
            marked[x] = true;
        }
        while let Some(x) = stack.pop() {
            for &t in &into[x] {
                if !marked[t] && t != u && t != v {
                    marked[t] = true;
                    stack.push(t);
                }
            }
        }
        (0..n).filter(|&x| !marked[x]).collect()
    }
}

/// Runs the `(k, ℓ)` pebble game on a multigraph, processing edges in input
/// order. Requires `k ≥ 1` and `0 ≤ ℓ < 2k`. A loop is accepted only if
/// `ℓ + 1 ≤ k`.
pub fn pebble_game(vertex_count: usize, edges: &[(usize, usize)], k: usize, l: usize) -> Result<PebbleResult, SparsityError> {
    if k == 0 || l >= 2 * k {
        return Err(SparsityError::Parameters { k, l });
    }
    for (idx, &(u, v)) in edges.iter().enumerate() {
        if u >= vertex_count || v >= vertex_count {
            return Err(SparsityError::VertexOutOfRange { edge: idx, count: vertex_count });
        }
    }
    let mut st = PebbleState::new(vertex_count, edges.len(), k);
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for (idx, &(u, v)) in edges.iter().enumerate() {
        let ok = if u == v { l < k && st.gather(u, u, l + 1) } else { st.gather(u, v, l + 1) };
        if ok {
            let tail = if st.pebbles[u] > 0 { u } else { v };
            st.pebbles[tail] -= 1;
            st.reorient(idx, tail, if tail == u { v } else { u });
            accepted.push(idx);
        } else {
            rejected.push(idx);
        }
    }

    let components = tight_components(&mut st, edges, &accepted, l);
    let verdict = if !rejected.is_empty() {
        PebbleVerdict::Dependent
    } else if (edges.len() as i64) == (k * vertex_count) as i64 - l as i64 {
        PebbleVerdict::Tight
    } else {
        PebbleVerdict::SparseNotTight
    };
    Ok(PebbleResult { k, l, vertex_count, edge_count: edges.len(), accepted, rejected, verdict, components })
}

/// With `ℓ` pebbles held on an accepted edge's endpoints: if no other free
/// pebble is reachable from them, the vertices unable to reach any free pebble
/// elsewhere span the maximal tight subgraph containing the edge.
fn tight_components(st: &mut PebbleState, edges: &[(usize, usize)], accepted: &[usize], l: usize) -> Vec<TightComponent> {
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    for &e in accepted {
        let (u, v) = edges[e];
        if u == v || sets.iter().any(|s| s.contains(&u) && s.contains(&v)) {
            continue;
        }
        if !st.gather(u, v, l) {
            continue;
        }
        let free: usize = st.reach(u, v).iter().map(|&x| st.pebbles[x]).sum();
        if free != l {
            continue;
        }
        let closed = st.closed_set(u, v);
        if !sets.iter().any(|s| closed.is_subset(s)) {
            sets.retain(|s| !s.is_subset(&closed));
            sets.push(closed);
        }
    }
    let mut out: Vec<TightComponent> = sets
        .into_iter()
        .map(|s| {
            let edges_in = accepted
                .iter()
                .copied()
                .filter(|&e| s.contains(&edges[e].0) && s.contains(&edges[e].1))
                .collect();
            TightComponent { vertices: s.into_iter().collect(), edges: edges_in }
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_laman_tight() {
        let r = pebble_game(3, &[(0, 1), (1, 2), (0, 2)], 2, 3).unwrap();
        assert_eq!(r.verdict, PebbleVerdict::Tight);
        assert_eq!(r.components, vec![TightComponent { vertices: vec![0, 1, 2], edges: vec![0, 1, 2] }]);
    }

    #[test]
    fn k4_is_dependent() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let r = pebble_game(4, &edges, 2, 3).unwrap();
        assert_eq!(r.verdict, PebbleVerdict::Dependent);
        assert_eq!(r.accepted.len(), 5);
        assert_eq!(r.rejected, vec![5]);
    }

    #[test]
    fn loops_need_spare_pebbles() {
        // (2,2): a loop would leave 2·1 − 1 < 2.
        let r = pebble_game(1, &[(0, 0)], 2, 2).unwrap();
        assert_eq!(r.verdict, PebbleVerdict::Dependent);
        // (2,1): one loop is fine, the second is not.
        let r = pebble_game(1, &[(0, 0), (0, 0)], 2, 1).unwrap();
        assert_eq!((r.accepted.len(), r.verdict), (1, PebbleVerdict::Dependent));
    }

    #[test]
    fn parallel_pair_is_22_tight() {
        let r = pebble_game(2, &[(0, 1), (1, 0)], 2, 2).unwrap();
        assert_eq!(r.verdict, PebbleVerdict::Tight);
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(pebble_game(2, &[], 2, 4), Err(SparsityError::Parameters { k: 2, l: 4 }));
    }
}
