//! Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned below.
//! Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity_core::deform::{analytic_grid_flow, flow_periodic_deform, length_drift, TrapeziumStrip};
use rigidity_core::framework::catalog::motif;
use rigidity_core::linalg::rank;
use rigidity_core::sparsity::laman_game;
use rigidity_core::symbol::*;
use rigidity_core::{FiniteFramework, Graph, LaurentPoly};

const COEFF_TOL: f64 = 1e-8;
const WAVE_TOL: f64 = 1e-8;
const DRIFT_TOL: f64 = 1e-9;
const ANALYTIC_TOL: f64 = 1e-8;
const COMMUTATION_TOL: f64 = 1e-10;
const INVERSION_RESIDUAL_TOL: f64 = 1e-8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn mono(c: f64, e: &[i32]) -> LaurentPoly {
    LaurentPoly::monomial(Complex64::new(c, 0.0), e.to_vec())
}

fn det_of(name: &str) -> LaurentPoly {
    build_symbol(&motif(name, None).unwrap()).unwrap().determinant().unwrap()
}

fn compare_normalized(det: &LaurentPoly, expected: &LaurentPoly, elapsed: Duration, limit: Duration) -> Outcome {
    let diff = det.normalize().unwrap().max_coeff_diff(&expected.normalize().unwrap());
    outcome(
        diff < COEFF_TOL && elapsed < limit,
        format!("max normalized coefficient difference {diff:.2e} (tol {COEFF_TOL:.0e}), {} terms", det.len()),
    )
}

fn c1_grid_determinant() -> Outcome {
    let t = Instant::now();
    let det = det_of("grid2");
    let elapsed = t.elapsed();
    let one = mono(1.0, &[0, 0]);
    let a = &one - &mono(1.0, &[-1, 0]);
    let b = &one - &mono(1.0, &[0, -1]);
    let expected = mono(-1.0 / 256.0, &[1, 1]) * &a * &a * &b * &b;
    let raw = det.max_coeff_diff(&expected);
    let mut o = compare_normalized(&det, &expected, elapsed, Duration::from_secs(1));
    o.detail.push_str(&format!("; unnormalized difference {raw:.2e}"));
    o
}

fn c2_kagome_determinant() -> Outcome {
    let t = Instant::now();
    let det = det_of("kagome");
    let elapsed = t.elapsed();
    let one = mono(1.0, &[0, 0]);
    let (zb, wb) = (mono(1.0, &[-1, 0]), mono(1.0, &[0, -1]));
    let expected = mono(1.0, &[1, 1]) * (&zb - &one) * (&wb - &one) * (&zb - &wb);
    compare_normalized(&det, &expected, elapsed, Duration::from_secs(1))
}

fn c3_kagome_net_determinant() -> Outcome {
    let t = Instant::now();
    let det = det_of("kagome-net");
    let elapsed = t.elapsed();
    let one = mono(1.0, &[0, 0, 0]);
    let (z, w, u) = (mono(1.0, &[1, 0, 0]), mono(1.0, &[0, 1, 0]), mono(1.0, &[0, 0, 1]));
    let expected = (&z - &one) * (&w - &one) * (&u - &one) * (&z - &w) * (&w - &u) * (&u - &z);
    compare_normalized(&det, &expected, elapsed, Duration::from_secs(10))
}

fn c4_mode_tables() -> Outcome {
    let third = 1.0 / 3.0;
    let table: [(&str, [f64; 2], usize); 9] = [
        ("grid2", [0.0, 0.0], 2),
        ("grid2", [third, 0.0], 1),
        ("grid2", [0.0, 0.25], 1),
        ("grid2", [third, 0.25], 0),
        ("kagome", [0.0, 0.0], 2),
        ("kagome", [third, third], 1),
        ("kagome", [third, 0.0], 1),
        ("kagome", [0.0, 0.25], 1),
        ("kagome", [0.37, 0.61], 0),
    ];
    let mu = |name: &str, s: &[f64]| build_symbol(&motif(name, None).unwrap()).unwrap().mode_multiplicity(s).unwrap().mu;
    let mut mismatches = Vec::new();
    for (name, s, want) in table {
        let got = mu(name, &s);
        if got != want {
            mismatches.push(format!("{name} mu({:.3},{:.3})={got} (expected {want})", s[0], s[1]));
        }
    }
    // Diagnostic only: the same grid rows on the two-edge motif.
    let min: Vec<usize> = table[..4].iter().map(|(_, s, _)| mu("grid2-min", s)).collect();
    let detail = if mismatches.is_empty() {
        "all 9 entries match".to_string()
    } else {
        format!("{}; grid2-min gives {:?} for the grid rows", mismatches.join(", "), min)
    };
    outcome(mismatches.is_empty(), detail)
}

fn c5_honeycomb4_rank() -> Outcome {
    let sf = build_symbol(&motif("honeycomb4", None).unwrap()).unwrap();
    let r = rank(&sf.motif_rigidity_matrix());
    let nullity = sf.cols() - r;
    outcome(r == 8 && nullity == 4, format!("rank {r}, nullity {nullity}"))
}

fn c6_isostatic_verdicts() -> Outcome {
    let mut cases: Vec<(String, Verdict)> = Vec::new();
    for seed in [0u64, 1, 2] {
        let sf = build_symbol(&motif("quadgrid", Some(seed)).unwrap()).unwrap();
        cases.push((format!("quadgrid({seed})"), square_summable_verdict(&sf).unwrap()));
    }
    for name in ["kagome", "kagome-net"] {
        let sf = build_symbol(&motif(name, None).unwrap()).unwrap();
        cases.push((name.to_string(), square_summable_verdict(&sf).unwrap()));
    }
    let pass = cases.iter().all(|(_, v)| *v == Verdict::Isostatic);
    outcome(pass, cases.iter().map(|(n, v)| format!("{n}: {v}")).collect::<Vec<_>>().join(", "))
}

fn c7_wave_flex_round_trip() -> Outcome {
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for name in ["grid2", "kagome"] {
        let m = motif(name, None).unwrap();
        let sf = build_symbol(&m).unwrap();
        for p in rum_scan(&sf, 6).unwrap().rum_points() {
            for wf in wave_flex(&sf, &p.s).unwrap() {
                worst = worst.max(verify_wave_flex(&wf, &m, 3).unwrap());
                checked += 1;
            }
        }
    }
    outcome(checked > 0 && worst < WAVE_TOL, format!("{checked} wave flexes, worst residual {worst:.2e} (tol {WAVE_TOL:.0e})"))
}

fn c8_pebble_vs_rank() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut agree, mut independent) = (0, 0);
    for _ in 0..50 {
        let n = rng.gen_range(2..=10);
        let density = rng.gen_range(0.15..0.7);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let points: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen_range(0..1_000_000) as f64 / 1e6, rng.gen_range(0..1_000_000) as f64 / 1e6]).collect();
        let pebble_independent = laman_game(n, &edges).unwrap().rejected.is_empty();
        let rank_independent = edges.is_empty() || {
            let fw = FiniteFramework::from_points(Graph::new(n, edges.clone()).unwrap(), &points).unwrap();
            rank(&fw.rigidity_matrix()) == edges.len()
        };
        if pebble_independent == rank_independent {
            agree += 1;
        }
        independent += usize::from(rank_independent);
    }
    outcome(agree == 50, format!("{agree}/50 graphs agree ({independent} independent, {} dependent)", 50 - independent))
}

fn c9_trapezium_strip() -> Outcome {
    let t = Instant::now();
    let strip = TrapeziumStrip::new(2.0, 1.0, 1.0, 2).unwrap();
    let lock = strip.locking_angle().unwrap();
    let angles: Vec<f64> = (1..=100).map(|k| lock.alpha1 * k as f64 / 101.0).collect();
    let gammas: Vec<f64> = angles.iter().map(|&a| strip.transmission(a).unwrap()).collect();
    let bounded = angles.iter().zip(&gammas).all(|(&a, &g)| g > 0.0 && g < a);
    let monotone = gammas.windows(2).all(|w| w[1] > w[0]);
    let orbit = strip.backward_iterates(0.01, &lock, 10_000);
    let elapsed = t.elapsed();
    let (witness, steps) = match &orbit {
        Ok(o) => (true, o.steps),
        Err(_) => (false, 0),
    };
    outcome(
        bounded && monotone && witness && elapsed < Duration::from_secs(1),
        format!(
            "alpha1 {:.6}, lambda {:.6}, 0<gamma<alpha: {bounded}, increasing: {monotone}, backward orbit leaves [0, alpha1] after {steps} steps",
            lock.alpha1, lock.lambda
        ),
    )
}

fn c10_flow_periodic() -> Outcome {
    let quad = motif("quadgrid", Some(0)).unwrap();
    let (drift, steps) = match flow_periodic_deform(&quad, 0.2, 20, 0) {
        Ok(path) => {
            let worst = path.lattices.iter().zip(&path.positions).map(|(l, p)| length_drift(&quad, l, p)).fold(0.0, f64::max);
            (worst, path.times.len() - 1)
        }
        Err(e) => return outcome(false, format!("quadgrid(0): {e}")),
    };
    let grid = motif("grid2", None).unwrap();
    let path = match flow_periodic_deform(&grid, 0.2, 20, 0) {
        Ok(path) => path,
        Err(e) => return outcome(false, format!("grid control: {e}")),
    };
    let analytic = path
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let (a, b) = analytic_grid_flow(t);
            (path.alpha[k] - a).abs().max((path.beta[k] - b).abs())
        })
        .fold(0.0, f64::max);
    outcome(
        drift < DRIFT_TOL && analytic < ANALYTIC_TOL,
        format!("quadgrid(0) {steps} steps, max drift {drift:.2e} (tol {DRIFT_TOL:.0e}); grid control vs closed form {analytic:.2e} (tol {ANALYTIC_TOL:.0e})"),
    )
}

fn c11_symmetry() -> Outcome {
    let m = motif("kagome", None).unwrap();
    let g = SymmetryElement::inversion(&m, &DVector::zeros(2)).unwrap();
    let commutation = verify_symmetry_commutation(&m, &g, 3).unwrap();
    let report = inversion_phase_analysis(&build_symbol(&m).unwrap()).unwrap();
    outcome(
        commutation < COMMUTATION_TOL && report.residual < INVERSION_RESIDUAL_TOL,
        format!(
            "commutation residual {commutation:.2e} (tol {COMMUTATION_TOL:.0e}); inversion tau={} p={:?} residual {:.2e} (tol {INVERSION_RESIDUAL_TOL:.0e})",
            report.tau, report.p, report.residual
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("grid determinant", c1_grid_determinant),
        ("kagome determinant", c2_kagome_determinant),
        ("kagome-net determinant", c3_kagome_net_determinant),
        ("mode multiplicity tables", c4_mode_tables),
        ("honeycomb4 rank at s=0", c5_honeycomb4_rank),
        ("isostaticity verdicts", c6_isostatic_verdicts),
        ("wave-flex round trip", c7_wave_flex_round_trip),
        ("pebble game vs rank oracle", c8_pebble_vs_rank),
        ("trapezium strip", c9_trapezium_strip),
        ("flow-periodic deformation", c10_flow_periodic),
        ("symmetry commutation", c11_symmetry),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {} [{:.3} s]", k + 1, o.detail, t.elapsed().as_secs_f64());
        if !o.pass {
            failed.push(k + 1);
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failing: {failed:?}");
        std::process::exit(1);
    }
}
