//! Counting certificates: Maxwell balances, `(k, ℓ)` pebble games and the
//! periodic counting conditions for planar motifs.

mod pebble;

pub use pebble::{pebble_game, PebbleResult, PebbleState, PebbleVerdict, TightComponent};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::framework::{FiniteFramework, Motif};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparsityError {
    #[error("pebble game needs k >= 1 and 0 <= l < 2k (got k={k}, l={l})")]
    Parameters { k: usize, l: usize },
    #[error("edge {edge} references a vertex outside 0..{count}")]
    VertexOutOfRange { edge: usize, count: usize },
    #[error("the ({k},{l}) game needs a simple graph; edge {edge} is a loop or repeats an earlier edge")]
    NotSimple { k: usize, l: usize, edge: usize },
    #[error("periodic counting check is planar only (motif dimension {0})")]
    Dimension(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracing {
    UnderBraced,
    MaxwellEquilibrium,
    OverBraced,
}

impl fmt::Display for Bracing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bracing::UnderBraced => "under-braced",
            Bracing::MaxwellEquilibrium => "Maxwell equilibrium",
            Bracing::OverBraced => "over-braced",
        })
    }
}

/// Degree-of-freedom count. For a motif the balance is `d|F_v| − |F_e|`; for
/// a finite framework it is `d|V| − |E| − d(d+1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub vertices: usize,
    pub edges: usize,
    pub dimension: usize,
    pub periodic: bool,
    pub balance: i64,
    pub verdict: Bracing,
}

fn classify(balance: i64) -> Bracing {
    match balance.signum() {
        1 => Bracing::UnderBraced,
        0 => Bracing::MaxwellEquilibrium,
        _ => Bracing::OverBraced,
    }
}

pub fn maxwell_report_motif(motif: &Motif) -> CountReport {
    let (v, e, d) = (motif.vertex_count(), motif.edge_count(), motif.dimension());
    let balance = (d * v) as i64 - e as i64;
    CountReport { vertices: v, edges: e, dimension: d, periodic: true, balance, verdict: classify(balance) }
}

pub fn maxwell_report_finite(fw: &FiniteFramework) -> CountReport {
    let (v, e, d) = (fw.vertex_count(), fw.edge_count(), fw.dimension());
    let balance = (d * v) as i64 - e as i64 - (d * (d + 1) / 2) as i64;
    CountReport { vertices: v, edges: e, dimension: d, periodic: false, balance, verdict: classify(balance) }
}

/// `(2,3)` game on a simple graph; loops and repeated pairs are rejected up front.
pub fn laman_game(vertex_count: usize, edges: &[(usize, usize)]) -> Result<PebbleResult, SparsityError> {
    let mut seen = std::collections::HashSet::new();
    for (idx, &(u, v)) in edges.iter().enumerate() {
        if u == v || !seen.insert((u.min(v), u.max(v))) {
            return Err(SparsityError::NotSimple { k: 2, l: 3, edge: idx });
        }
    }
    pebble_game(vertex_count, edges, 2, 3)
}

/// Gain diagnostics for one `(2,2)`-tight component of the quotient multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGain {
    pub component: TightComponent,
    /// Whether some cycle of the component has a nonzero net cell offset.
    pub nonzero_gain: bool,
}

/// Counting conditions for a planar motif: `2|F_v| − |F_e| = 2` globally and
/// `2|F_v'| − |F_e'| ≥ 2` for every edge-induced submotif.
#[derive(Clone, Debug, PartialEq)]
pub struct RossReport {
    pub balance: i64,
    pub global_equality: bool,
    pub pebble: PebbleResult,
    pub counting_holds: bool,
    pub components: Vec<ComponentGain>,
    /// Only pebble-discovered tight components are inspected, so a clean gain
    /// report is a partial check, never a certificate.
    pub gains_partial: bool,
}

impl RossReport {
    pub fn gains_ok(&self) -> bool {
        self.components.iter().all(|c| c.nonzero_gain)
    }
}

pub fn ross_check(motif: &Motif) -> Result<RossReport, SparsityError> {
    if motif.dimension() != 2 {
        return Err(SparsityError::Dimension(motif.dimension()));
    }
    let balance = 2 * motif.vertex_count() as i64 - motif.edge_count() as i64;
    let global_equality = balance == 2;
    let pebble = pebble_game(motif.vertex_count(), &motif.quotient_edges(), 2, 2)?;
    let counting_holds = global_equality && pebble.rejected.is_empty();
    let components = pebble
        .components
        .iter()
        .map(|c| ComponentGain { nonzero_gain: has_nonzero_gain(motif, c), component: c.clone() })
        .collect();
    Ok(RossReport { balance, global_equality, pebble, counting_holds, components, gains_partial: true })
}

/// Spanning-tree potentials `π` on the component; an edge `(i, j, δ)` closes a
/// cycle of gain `π_i + δ − π_j`.
fn has_nonzero_gain(motif: &Motif, c: &TightComponent) -> bool {
    let d = motif.dimension();
    let edges = motif.edges();
    let mut potential: Vec<Option<Vec<i64>>> = vec![None; motif.vertex_count()];
    for &root in &c.vertices {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(vec![0; d]);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &k in &c.edges {
                let e = &edges[k];
                let px = potential[x].clone().expect("visited");
                let (y, py) = if e.i == x {
                    (e.j, px.iter().zip(&e.offset).map(|(a, b)| a + b).collect::<Vec<_>>())
                } else if e.j == x {
                    (e.i, px.iter().zip(&e.offset).map(|(a, b)| a - b).collect())
                } else {
                    continue;
                };
                if potential[y].is_none() {
                    potential[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
    }
    c.edges.iter().any(|&k| {
        let e = &edges[k];
        let (pi, pj) = (potential[e.i].as_ref().expect("in component"), potential[e.j].as_ref().expect("in component"));
        (0..d).any(|q| pi[q] + e.offset[q] - pj[q] != 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::catalog::{catalog, motif};

    #[test]
    fn maxwell_counts() {
        let r = maxwell_report_motif(&motif("kagome", None).unwrap());
        assert_eq!((r.balance, r.verdict), (0, Bracing::MaxwellEquilibrium));
        let r = maxwell_report_motif(&motif("honeycomb3", None).unwrap());
        assert_eq!((r.balance, r.verdict), (3, Bracing::UnderBraced));
        let fw = catalog("k4", None).unwrap().into_framework("k4").unwrap();
        let r = maxwell_report_finite(&fw);
        assert_eq!((r.balance, r.verdict), (-1, Bracing::OverBraced));
    }

    #[test]
    fn ross_on_grids() {
        let full = ross_check(&motif("grid2", None).unwrap()).unwrap();
        assert!(!full.counting_holds && full.balance == 0);
        let reduced = ross_check(&motif("grid2-reduced", None).unwrap()).unwrap();
        assert!(reduced.counting_holds, "{reduced:?}");
        assert_eq!(reduced.pebble.verdict, PebbleVerdict::Tight);
        assert!(reduced.gains_ok());
        let min = ross_check(&motif("grid2-min", None).unwrap()).unwrap();
        assert!(!min.counting_holds);
        assert!(matches!(ross_check(&motif("kagome-net", None).unwrap()), Err(SparsityError::Dimension(3))));
    }

    #[test]
    fn laman_rejects_multigraphs() {
        assert!(matches!(laman_game(2, &[(0, 1), (1, 0)]), Err(SparsityError::NotSimple { edge: 1, .. })));
    }
}
