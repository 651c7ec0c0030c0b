use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rigidity_core::laurent::{LaurentError, UNIT_EQ_TOL};
use rigidity_core::{LaurentPoly, SymbolMatrix};

fn small_coeff() -> impl Strategy<Value = Complex64> {
    (-4i32..=4, -4i32..=4).prop_map(|(a, b)| Complex64::new(a as f64 / 2.0, b as f64 / 4.0))
}

fn poly(dim: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, dim), small_coeff()), 0..5)
        .prop_map(move |terms| LaurentPoly::from_terms(dim, terms).unwrap())
}

fn point(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.5f64..1.5, -3.1f64..3.1).prop_map(|(r, t)| Complex64::from_polar(r, t)), dim)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

#[test]
fn dimension_mismatch_is_an_error() {
    let p = LaurentPoly::constant(2, Complex64::new(1.0, 0.0));
    assert!(matches!(p.eval(&[Complex64::new(1.0, 0.0)]), Err(LaurentError::DimensionMismatch { expected: 2, found: 1 })));
    assert!(LaurentPoly::zero(2).normalize().is_err());
}

#[test]
fn symbol_matrix_text_round_trip() {
    let z = LaurentPoly::monomial(Complex64::new(0.5, -1.0), vec![1, -2]);
    let one = LaurentPoly::constant(2, Complex64::new(-3.0, 0.0));
    let m = SymbolMatrix::new(2, 2, 2, vec![z.clone(), one.clone(), LaurentPoly::zero(2), &z + &one]).unwrap();
    let back: SymbolMatrix = m.to_string().parse().unwrap();
    assert_eq!(back, m);
}

#[test]
fn determinant_of_random_integer_matrix_matches_cofactor_oracle() {
    // 3×3 in two variables, expanded by cofactors with polynomial arithmetic.
    let e = |c: f64, a: i32, b: i32| LaurentPoly::monomial(Complex64::new(c, 0.0), vec![a, b]);
    let entries = vec![
        &e(1.0, 1, 0) + &e(2.0, 0, 0),
        e(-1.0, 0, -1),
        e(3.0, 0, 0),
        e(1.0, 0, 0),
        &e(1.0, -1, 1) - &e(1.0, 0, 0),
        e(2.0, 1, 1),
        e(0.5, 0, 0),
        e(1.0, 0, 1),
        &e(1.0, 0, 0) + &e(1.0, -1, -1),
    ];
    let m = SymbolMatrix::new(3, 3, 2, entries.clone()).unwrap();
    let a = |r: usize, c: usize| &entries[3 * r + c];
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| a(r1, c1) * a(r2, c2) - a(r1, c2) * a(r2, c1);
    let cofactor = a(0, 0) * &minor(1, 2, 1, 2) - a(0, 1) * &minor(1, 2, 0, 2) + a(0, 2) * &minor(1, 2, 0, 1);
    let det = m.det_interpolate().unwrap();
    assert!(det.max_coeff_diff(&cofactor) < 1e-10, "{det}\n{cofactor}");
    assert!(!m.det_is_zero().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(2), q in poly(2), r in poly(2)) {
        prop_assert!((&p + &q).max_coeff_diff(&(&q + &p)) < 1e-12);
        prop_assert!((&p * &q).max_coeff_diff(&(&q * &p)) < 1e-12);
        let left = &p * &(&q + &r);
        let right = &(&p * &q) + &(&p * &r);
        prop_assert!(left.max_coeff_diff(&right) < 1e-12);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(3), q in poly(3), z in point(3)) {
        let (a, b) = (p.eval(&z).unwrap(), q.eval(&z).unwrap());
        prop_assert!(close((&p * &q).eval(&z).unwrap(), a * b));
        prop_assert!(close((&p + &q).eval(&z).unwrap(), a + b));
    }

    #[test]
    fn text_round_trip(p in poly(3)) {
        let back = LaurentPoly::parse(&p.to_string(), 3).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn normal_form_ignores_units(p in poly(2), shift in prop::collection::vec(-3i32..=3, 2), angle in -3.0f64..3.0, r in 0.2f64..5.0) {
        prop_assume!(!p.is_zero());
        let q = p.shift(&shift).scale(Complex64::from_polar(r, angle));
        prop_assert!(p.equals_up_to_unit(&q, UNIT_EQ_TOL));
        let (n1, n2) = (p.normalize().unwrap(), q.normalize().unwrap());
        prop_assert!(n1.max_coeff_diff(&n2) < 1e-9);
    }

    #[test]
    fn interpolated_determinant_matches_pointwise(entries in prop::collection::vec(poly(2), 9), z in point(2)) {
        let m = SymbolMatrix::new(3, 3, 2, entries).unwrap();
        let det = m.det_interpolate().unwrap();
        let direct: Complex64 = m.eval(&z).unwrap().determinant();
        let scale: f64 = (0..3).map(|r| (0..3).map(|c| m.get(r, c).l1_norm()).sum::<f64>()).product::<f64>() * 27.0;
        prop_assert!((det.eval(&z).unwrap() - direct).norm() <= 1e-9 * (1.0 + scale));
    }

    #[test]
    fn evaluated_matrix_matches_entrywise(entries in prop::collection::vec(poly(2), 6), z in point(2)) {
        let m = SymbolMatrix::new(2, 3, 2, entries.clone()).unwrap();
        let ev: DMatrix<Complex64> = m.eval(&z).unwrap();
        for r in 0..2 {
            for c in 0..3 {
                prop_assert!(close(ev[(r, c)], entries[3 * r + c].eval(&z).unwrap()));
            }
        }
    }
}
