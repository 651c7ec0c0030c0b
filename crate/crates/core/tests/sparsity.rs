use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity_core::framework::catalog::{catalog, motif};
use rigidity_core::linalg::rank;
use rigidity_core::sparsity::*;
use rigidity_core::{FiniteFramework, Graph};

/// Edges of a random simple graph on `n` vertices.
fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Greedy independence by rank increments of the rigidity matrix at a
/// random rational placement.
fn rank_oracle(n: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Vec<bool> {
    let points: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen_range(0..1_000_000) as f64 / 1e6, rng.gen_range(0..1_000_000) as f64 / 1e6]).collect();
    let mut kept: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for &e in edges {
        let mut trial = kept.clone();
        trial.push(e);
        let fw = FiniteFramework::from_points(Graph::new(n, trial.clone()).unwrap(), &points).unwrap();
        let independent = rank(&fw.rigidity_matrix()) == trial.len();
        if independent {
            kept = trial;
        }
        out.push(independent);
    }
    out
}

/// Largest `|E(S)| − (k|S| − ℓ)` over vertex subsets spanning an edge.
fn worst_excess(n: usize, edges: &[(usize, usize)], k: usize, l: usize) -> i64 {
    let mut worst = i64::MIN;
    for mask in 1u32..(1 << n) {
        let count = edges.iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count() as i64;
        if count == 0 {
            continue;
        }
        worst = worst.max(count - (k as i64 * mask.count_ones() as i64 - l as i64));
    }
    worst
}

#[test]
fn laman_game_matches_generic_rank_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let edges = random_graph(&mut rng, n, 0.5);
        let r = laman_game(n, &edges).unwrap();
        let oracle = rank_oracle(n, &edges, &mut rng);
        let pebble: Vec<bool> = (0..edges.len()).map(|k| r.accepted.contains(&k)).collect();
        assert_eq!(pebble, oracle, "n={n} edges={edges:?}");
    }
}

#[test]
fn maxwell_reports() {
    let r = maxwell_report_motif(&motif("kagome-net", None).unwrap());
    assert_eq!((r.balance, r.verdict), (0, Bracing::MaxwellEquilibrium));
    let r = maxwell_report_finite(&catalog("square", None).unwrap().into_framework("square").unwrap());
    assert_eq!((r.balance, r.verdict), (1, Bracing::UnderBraced));
    for name in ["grid2", "kagome", "honeycomb4"] {
        assert_eq!(maxwell_report_motif(&motif(name, None).unwrap()).balance, 0, "{name}");
    }
}

#[test]
fn laman_components_of_two_triangles_on_a_hinge() {
    // Two triangles sharing vertex 2: each is tight, the union is not.
    let edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)];
    let r = laman_game(5, &edges).unwrap();
    assert_eq!(r.verdict, PebbleVerdict::SparseNotTight);
    let sets: Vec<Vec<usize>> = r.components.iter().map(|c| c.vertices.clone()).collect();
    assert_eq!(sets, vec![vec![0, 1, 2], vec![2, 3, 4]]);
}

#[test]
fn ross_report_on_reduced_grid() {
    let r = ross_check(&motif("grid2-reduced", None).unwrap()).unwrap();
    assert!(r.global_equality && r.counting_holds && r.gains_partial);
    assert!(ross_check(&motif("kagome", None).unwrap()).unwrap().balance == 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pebble_game_is_a_matroid_greedy(n in 1usize..7, seed in any::<u64>(), k in 1usize..3, l_raw in 0usize..4, loops in any::<bool>()) {
        let l = l_raw % (2 * k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = random_graph(&mut rng, n, 0.6);
        // Multigraph: repeat some edges and, optionally, add loops.
        let extra: Vec<(usize, usize)> = edges.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        edges.extend(extra);
        if loops {
            edges.extend((0..n).filter(|_| rng.gen_bool(0.3)).map(|v| (v, v)));
        }
        let r = pebble_game(n, &edges, k, l).unwrap();
        let accepted: Vec<(usize, usize)> = r.accepted.iter().map(|&e| edges[e]).collect();
        prop_assert!(accepted.is_empty() || worst_excess(n, &accepted, k, l) <= 0);
        for &e in &r.rejected {
            let mut with = accepted.clone();
            with.push(edges[e]);
            prop_assert!(worst_excess(n, &with, k, l) > 0, "edge {:?} rejected but independent", edges[e]);
        }
        for c in &r.components {
            let inside = r.accepted.iter().filter(|&&e| c.vertices.contains(&edges[e].0) && c.vertices.contains(&edges[e].1)).count();
            prop_assert_eq!(inside as i64, (k * c.vertices.len()) as i64 - l as i64);
        }
    }
}
