//! Property-based invariants of the exact symbolic layer.

use embedsharp::poly::MultivariatePolynomial as Poly;
use embedsharp::radial::{Homogeneity, RadialSymbolicExpr};
use embedsharp::rational::rat;
use proptest::prelude::*;

fn arb_poly(dim: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..=2, dim),
            (-5i64..=5).prop_filter("nonzero", |n| *n != 0),
            1i64..=3,
        ),
        1..=2,
    )
    .prop_map(move |monomials| {
        let mut p = Poly::zero(dim);
        for (exps, num, den) in monomials {
            p = p.add(&Poly::monomial(dim, exps, rat(num, den)));
        }
        p
    })
}

fn arb_expr(dim: usize) -> impl Strategy<Value = RadialSymbolicExpr> {
    prop::collection::vec((-3i64..=3, arb_poly(dim)), 1..=2)
        .prop_map(move |terms| RadialSymbolicExpr::from_terms(dim, terms))
}

fn arb_point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.6f64..1.6, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mixed_partials_commute(e in arb_expr(3), i in 0usize..3, j in 0usize..3) {
        let ij = e.differentiate(i).differentiate(j);
        let ji = e.differentiate(j).differentiate(i);
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn canonicalize_is_idempotent(e in arb_expr(2)) {
        let (once, zero_once) = e.canonicalize();
        let (twice, zero_twice) = once.canonicalize();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(zero_once, zero_twice);
        // Expressions are kept canonical by construction.
        prop_assert_eq!(&once, &e);
    }

    #[test]
    fn subtraction_from_self_is_zero(e in arb_expr(3)) {
        prop_assert!(e.sub(&e).is_zero());
    }

    #[test]
    fn product_rule_is_exact(f in arb_expr(2), g in arb_expr(2), i in 0usize..2) {
        let lhs = f.mul(&g).differentiate(i);
        let rhs = f.differentiate(i).mul(&g).add(&f.mul(&g.differentiate(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_matches_finite_difference(
        e in arb_expr(2),
        x in arb_point(2),
        i in 0usize..2,
    ) {
        let exact = e.differentiate(i).eval_f64(&x);
        let h = 1e-5;
        let mut hi = x.clone();
        let mut lo = x.clone();
        hi[i] += h;
        lo[i] -= h;
        let fd = (e.eval_f64(&hi) - e.eval_f64(&lo)) / (2.0 * h);
        let tol = 1e-6 * exact.abs().max(1.0);
        prop_assert!((exact - fd).abs() <= tol, "exact {exact}, fd {fd}");
    }

    #[test]
    fn exact_and_float_evaluation_agree(e in arb_expr(3), x in 1i64..=5, y in -5i64..=5, z in 1i64..=4) {
        let point = [rat(x, 1), rat(y, 1), rat(z, 1)];
        let exact = e.evaluate(&point).unwrap().to_f64();
        let float = e.eval_f64(&[x as f64, y as f64, z as f64]);
        let tol = 1e-10 * exact.abs().max(1.0);
        prop_assert!((exact - float).abs() <= tol);
    }

    #[test]
    fn monomial_terms_are_homogeneous(
        exps in prop::collection::vec(0u32..=2, 2),
        j in -3i64..=3,
    ) {
        let p = Poly::monomial(2, exps.clone(), rat(1, 1));
        let e = RadialSymbolicExpr::from_term(p, j);
        let degree = exps.iter().sum::<u32>() as i64 + j;
        prop_assert_eq!(e.homogeneity_degree().unwrap(), Homogeneity::Degree(degree));
    }

    #[test]
    fn decimal_formatting_round_trips(x in -1e12f64..1e12, sig in 6usize..=17) {
        prop_assume!(x.is_finite() && x != 0.0);
        let s = embedsharp::rational::format_f64(x, sig);
        let back: f64 = s.parse().expect("formatter output parses");
        let tol = 10f64.powi(1 - sig as i32) * x.abs();
        prop_assert!((back - x).abs() <= tol, "{x} -> {s} -> {back}");
    }

    #[test]
    fn homogeneous_scaling_law(
        exps in prop::collection::vec(0u32..=2, 2),
        j in -3i64..=3,
        x in arb_point(2),
        scale in 1.25f64..3.0,
    ) {
        // e(t x) = t^d e(x) for t > 0.
        let e = RadialSymbolicExpr::from_term(Poly::monomial(2, exps, rat(1, 1)), j);
        let d = match e.homogeneity_degree().unwrap() {
            Homogeneity::Degree(d) => d,
            Homogeneity::NotHomogeneous => unreachable!("monomial terms are homogeneous"),
        };
        let scaled: Vec<f64> = x.iter().map(|v| scale * v).collect();
        let lhs = e.eval_f64(&scaled);
        let rhs = scale.powi(d as i32) * e.eval_f64(&x);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
    }
}
