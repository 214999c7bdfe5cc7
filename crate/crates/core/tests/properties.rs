use nalgebra::DMatrix;
use ncharm_core::calculus::{commutative_collapse, commutative_laplacian, directional_derivative, laplacian};
use ncharm_core::classify2::{classify, Degree4Coeffs, VerdictKind};
use ncharm_core::positivity::{ldl_pivots, min_eigenvalue, SampleConfig};
use ncharm_core::{evaluate, parse, Letter, MatrixPoint, Poly, Scalar, Word};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn word(g: u16, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(1..=g, 0..=max_len).prop_map(|v| Word::from_vars(&v))
}

fn poly(g: u16, max_len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((word(g, max_len), scalar()), 0..6).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(Poly::zero(g as usize), |acc, (w, c)| acc + Poly::monomial(g as usize, w, c))
    })
}

/// Polynomial in x1, x2 and h.
fn poly_with_h() -> impl Strategy<Value = Poly> {
    let letter = prop_oneof![Just(Letter::X(1)), Just(Letter::X(2)), Just(Letter::H)];
    let w = proptest::collection::vec(letter, 0..5).prop_map(Word::new);
    proptest::collection::vec((w, scalar()), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Poly::zero(2), |acc, (w, c)| acc + Poly::monomial(2, w, c))
    })
}

fn sym_matrix(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
        let m = DMatrix::from_vec(n, n, v);
        (&m + m.transpose()) * 0.5
    })
}

fn point(n: usize) -> impl Strategy<Value = (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> {
    (sym_matrix(n), sym_matrix(n), sym_matrix(n))
}

fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
    (a - b).iter().all(|x| x.abs() <= tol * (1.0 + a.amax().max(b.amax())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transpose_is_an_involutive_anti_homomorphism(p in poly_with_h(), q in poly_with_h()) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!((&p * &q).transpose(), &q.transpose() * &p.transpose());
        prop_assert_eq!((&p + &q).transpose(), &p.transpose() + &q.transpose());
    }

    #[test]
    fn ring_axioms(p in poly(2, 3), q in poly(2, 3), r in poly(2, 3)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_product_rule(p in poly(2, 3), q in poly(2, 3), i in 1usize..=2) {
        let d = |f: &Poly| directional_derivative(f, i).unwrap();
        prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
        prop_assert_eq!(d(&(&p + &q)), &d(&p) + &d(&q));
    }

    #[test]
    fn laplacian_product_rule(p in poly(2, 3), q in poly(2, 3)) {
        let mut cross = Poly::zero(2);
        for i in 1..=2 {
            cross = cross + &directional_derivative(&p, i).unwrap() * &directional_derivative(&q, i).unwrap();
        }
        let two = Scalar::from_integer(2.into());
        let rhs = &(&laplacian(&p).unwrap() * &q) + &(&p * &laplacian(&q).unwrap()) + cross.scale(&two);
        prop_assert_eq!(laplacian(&(&p * &q)).unwrap(), rhs);
    }

    #[test]
    fn laplacian_commutes_with_transpose(p in poly(3, 5)) {
        prop_assert_eq!(laplacian(&p.transpose()).unwrap(), laplacian(&p).unwrap().transpose());
    }

    #[test]
    fn collapse_identity(p in poly(3, 6)) {
        let lhs = commutative_collapse(&laplacian(&p).unwrap());
        let rhs = commutative_laplacian(&commutative_collapse(&p)).unwrap().times_h_power(2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_and_json_round_trip(p in poly_with_h()) {
        prop_assert_eq!(parse(&p.render(), 2).unwrap(), p.clone());
        prop_assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(2, 3), q in poly(2, 3), (x, y, h) in point(3)) {
        let pt = MatrixPoint::new(vec![x, y], Some(h)).unwrap();
        let ev = |f: &Poly| evaluate(f, &pt).unwrap();
        prop_assert!(close(&ev(&(&p * &q)), &(ev(&p) * ev(&q)), 1e-12));
        prop_assert!(close(&ev(&(&p + &q)), &(ev(&p) + ev(&q)), 1e-12));
        prop_assert!(close(&ev(&p.transpose()), &ev(&p).transpose(), 1e-12));
    }

    #[test]
    fn derivative_matches_finite_difference(p in poly(2, 4), (x, y, h) in point(2), i in 1usize..=2) {
        let t = 1e-6;
        let shift = |s: f64| {
            let (mut a, mut b) = (x.clone(), y.clone());
            if i == 1 { a += &h * s } else { b += &h * s }
            evaluate(&p, &MatrixPoint::new(vec![a, b], None).unwrap()).unwrap()
        };
        let fd = (shift(t) - shift(-t)) / (2.0 * t);
        let exact = evaluate(
            &directional_derivative(&p, i).unwrap(),
            &MatrixPoint::new(vec![x.clone(), y.clone()], Some(h.clone())).unwrap(),
        ).unwrap();
        prop_assert!(close(&fd, &exact, 1e-5));
    }

    #[test]
    fn ldl_and_eigenvalues_agree(m in sym_matrix(4), rank_one in proptest::collection::vec(-1.0f64..1.0, 4)) {
        let v = DMatrix::from_vec(4, 1, rank_one);
        for a in [m.clone(), &v * v.transpose(), &m * &m] {
            let psd = ldl_pivots(&a, 1e-9).unwrap().psd;
            let e = min_eigenvalue(&a).unwrap();
            if psd {
                prop_assert!(e >= -1e-8);
            } else {
                prop_assert!(e < 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_is_scale_equivariant(b in proptest::array::uniform6(-3i64..=3), c in 1i64..=9) {
        let p = Degree4Coeffs::from_ints(b).to_poly();
        let cfg = SampleConfig { sizes: vec![1, 2, 3], samples_per_size: 60, ..SampleConfig::default() };
        let k1 = classify(&p, &cfg).unwrap().kind;
        let k2 = classify(&p.scale(&Scalar::new(c.into(), 7.into())), &cfg).unwrap().kind;
        prop_assert_eq!(k1, k2);
        prop_assert_ne!(k1, VerdictKind::Unknown);
    }
}
