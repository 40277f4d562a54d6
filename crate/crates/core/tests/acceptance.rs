//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities (visible under `--nocapture`).

use embedsharp::constants::{best_constant, ell_closed_form};
use embedsharp::multi_index::MultiIndex;
use embedsharp::profile::{extremal_ratio, ExpDecay, MollifiedExpDecay, RadialNormEvaluator};
use embedsharp::radial::RadialSymbolicExpr;
use embedsharp::rational::{rat, rat_int, to_f64};
use embedsharp::tensor::{ell_symbolic, operator_l_apply, DerivativeTensor};
use embedsharp::verify::{
    embedding_inequality_check, exact_invariance_run, float_invariance_run, inequality_corpus,
    weak_identity_check, weak_identity_corpus,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 1: closed form and symbolic oracle agree exactly for all
/// N in 1..=5, m in 1..=min(N,5), including the published small values.
#[test]
fn criterion_1_exact_constants() {
    let started = std::time::Instant::now();
    for n in 1..=5usize {
        for m in 1..=(n as u32).min(5) {
            let closed = ell_closed_form(n, m);
            let oracle = ell_symbolic(n, m).unwrap();
            assert_eq!(closed.value, oracle, "l({n},{m}) routes disagree");
        }
    }
    assert_eq!(ell_closed_form(1, 1).value, rat_int(1));
    assert_eq!(ell_closed_form(2, 2).value, rat_int(2));
    assert_eq!(ell_closed_form(3, 3).value, rat_int(28));
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "runtime bound: {elapsed:?}");
    println!(
        "ACCEPTANCE 1 (exact constants): PASS - 15 (N,m) pairs agree exactly; l_1=1, l_2=2, l_3=28; {elapsed:?}"
    );
}

/// Criterion 2: K_1 = 1/2 exactly; K_2, K_3 match independent evaluation
/// of the same closed forms to 12 significant digits.
#[test]
fn criterion_2_best_constant_table() {
    let started = std::time::Instant::now();
    let k1 = best_constant(1).unwrap();
    assert_eq!(k1.value, rat(1, 2), "K_1 must be exactly 1/2");

    let k2 = best_constant(2).unwrap();
    let direct2 = 1.0 / (2.0 * std::f64::consts::PI * 2f64.sqrt());
    let dev2 = (k2.value_f64() - direct2).abs() / direct2;
    assert!(dev2 <= 1e-12, "K_2 deviation {dev2}");

    let k3 = best_constant(3).unwrap();
    let direct3 = 1.0 / (4.0 * std::f64::consts::PI * 28f64.sqrt());
    let dev3 = (k3.value_f64() - direct3).abs() / direct3;
    assert!(dev3 <= 1e-12, "K_3 deviation {dev3}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 1, "runtime bound: {elapsed:?}");
    println!(
        "ACCEPTANCE 2 (best constants): PASS - K_1 = 1/2 exact; K_2 = {} and K_3 = {} to 12 digits; {elapsed:?}",
        k2.to_decimal_string(12),
        k3.to_decimal_string(12)
    );
}

/// Criterion 3: the operator applied to log|x| canonicalizes to the zero
/// expression for N = 2, 3, 4 with no tolerance anywhere.
#[test]
fn criterion_3_operator_certificate() {
    let started = std::time::Instant::now();
    for dim in 2..=4usize {
        let f = operator_l_apply(dim);
        let (_, is_zero) = f.canonicalize();
        assert!(is_zero, "F must vanish identically for N = {dim}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 600, "runtime bound: {elapsed:?}");
    println!(
        "ACCEPTANCE 3 (operator certificate): PASS - F == 0 exactly for N = 2, 3, 4; {elapsed:?}"
    );
}

/// Criterion 4: weak fundamental-solution identity to 1e-6 relative for
/// three distinct profiles in each of N = 2, 3.
#[test]
fn criterion_4_weak_identity() {
    let started = std::time::Instant::now();
    let mut worst: f64 = 0.0;
    for dim in 2..=3usize {
        let corpus = weak_identity_corpus(dim);
        assert!(corpus.len() >= 3);
        for (id, profile) in &corpus {
            let report = weak_identity_check(dim, profile, id, 1e-10).unwrap();
            assert!(
                report.relative_error <= 1e-6,
                "N={dim} {id}: relative error {}",
                report.relative_error
            );
            worst = worst.max(report.relative_error);
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 120, "runtime bound: {elapsed:?}");
    println!(
        "ACCEPTANCE 4 (weak identity): PASS - 6 profile checks, worst relative error {worst:.3e}; {elapsed:?}"
    );
}

/// Criterion 5: exact norm invariance under 10 rational orthogonal
/// matrices (N <= 3, m <= 3); <= 1e-10 relative under 100 seeded random
/// orthogonal matrices (N <= 4, m <= 4).
#[test]
fn criterion_5_invariance_suite() {
    let started = std::time::Instant::now();
    let seed = 0x5eed;
    let (exact_cases, exact_failures) = exact_invariance_run(3, 3, 10, seed);
    assert!(exact_cases > 0);
    assert_eq!(exact_failures, 0, "exact invariance failures");

    let (float_cases, worst_norm, worst_contraction) = float_invariance_run(4, 4, 100, seed);
    assert!(float_cases > 0);
    assert!(worst_norm <= 1e-10, "worst norm deviation {worst_norm}");
    assert!(
        worst_contraction <= 1e-10,
        "worst contraction deviation {worst_contraction}"
    );
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE 5 (invariance): PASS - {exact_cases} exact cases, 0 failures; {float_cases} float cases, worst {worst_norm:.3e}; {elapsed:?}"
    );
}

/// Criterion 6: the sharpness ratio decreases toward sqrt(l_2) omega_1 =
/// 2 sqrt(2) pi over eps in {1e-1..1e-4} and the 1/log(1/eps)
/// extrapolation lands within 2%.
#[test]
fn criterion_6_sharpness() {
    let started = std::time::Instant::now();
    let limit = 2.0 * 2f64.sqrt() * std::f64::consts::PI;
    let eps_grid = [1e-1, 1e-2, 1e-3, 1e-4];
    let mut points = Vec::new();
    for &eps in &eps_grid {
        let r = extremal_ratio(2, eps, 1e-10).unwrap();
        points.push((1.0 / (1.0 / eps).ln(), r.ratio));
    }
    for w in points.windows(2) {
        assert!(
            w[0].1 > w[1].1,
            "ratio must decrease: {} then {}",
            w[0].1,
            w[1].1
        );
    }
    assert!(points.last().unwrap().1 > limit, "ratios approach from above");
    let (z3, r3) = points[2];
    let (z4, r4) = points[3];
    let extrapolated = (z3 * r4 - z4 * r3) / (z3 - z4);
    let deviation = (extrapolated - limit).abs() / limit;
    assert!(deviation <= 0.02, "extrapolation deviation {deviation}");
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE 6 (sharpness): PASS - ratios {:.4} > {:.4} > {:.4} > {:.4} -> limit {limit:.4}, extrapolation within {:.2}%; {elapsed:?}",
        points[0].1, points[1].1, points[2].1, points[3].1, deviation * 100.0
    );
}

/// Criterion 7: the one-dimensional equality case. The mollified
/// exponential attains the constant to 1e-6; the raw profile integrates
/// |u'| to 2 within 1e-8.
#[test]
fn criterion_7_equality_case() {
    let started = std::time::Instant::now();
    let mollified = MollifiedExpDecay { inner: 20.0, outer: 30.0 };
    let check = embedding_inequality_check(1, &mollified, "mollified_exp", 1e-10).unwrap();
    // ||u||_inf = K_1 int |u'| <=> margin = 0.
    assert!(
        check.margin.abs() <= 1e-6,
        "equality margin {}",
        check.margin
    );

    let raw = ExpDecay::default();
    let raw_check = embedding_inequality_check(1, &raw, "exp_decay", 1e-12).unwrap();
    assert!(
        (raw_check.seminorm - 2.0).abs() <= 1e-8,
        "int |u'| = {}",
        raw_check.seminorm
    );
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE 7 (equality case N=1): PASS - margin {:.2e}, int|u'| = {:.12}; {elapsed:?}",
        check.margin, raw_check.seminorm
    );
}

/// Criterion 8: strict inequality for N >= 2 across the ten-profile
/// corpus, with the gap exceeding the quadrature slack.
#[test]
fn criterion_8_strictness() {
    let started = std::time::Instant::now();
    let mut smallest_margin = f64::INFINITY;
    for dim in 2..=3usize {
        let corpus = inequality_corpus(dim);
        assert_eq!(corpus.len(), 10);
        for (id, profile) in &corpus {
            let check = embedding_inequality_check(dim, profile, id, 1e-9).unwrap();
            assert!(check.margin > 0.0, "N={dim} {id}: margin {}", check.margin);
            assert!(
                check.rhs - check.lhs > check.slack,
                "N={dim} {id}: gap {} not beyond slack {}",
                check.rhs - check.lhs,
                check.slack
            );
            smallest_margin = smallest_margin.min(check.margin);
        }
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE 8 (strictness N>=2): PASS - 20 checks, smallest margin {smallest_margin:.4}; {elapsed:?}"
    );
}

/// Criterion 9: |grad^N u| is direction independent to 1e-9 relative over
/// 20 random unit directions, three profiles, N = 2 and 3.
#[test]
fn criterion_9_direction_independence() {
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for dim in 2..=3usize {
        let ev = RadialNormEvaluator::new(dim, dim as u32);
        for (id, profile) in weak_identity_corpus(dim) {
            for &r in &[0.4f64, 0.8] {
                let reference = ev.norm(&profile, r);
                for _ in 0..20 {
                    let mut v: Vec<f64> =
                        (0..dim).map(|_| rng.random_range(-1.0..1.0f64)).collect();
                    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                    if n < 1e-3 {
                        continue;
                    }
                    v.iter_mut().for_each(|c| *c *= r / n);
                    let got = ev.norm_at(&profile, &v);
                    let dev = (got - reference).abs() / reference.abs().max(1e-300);
                    assert!(dev <= 1e-9, "N={dim} {id} r={r}: deviation {dev}");
                    worst = worst.max(dev);
                }
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE 9 (radial direction independence): PASS - worst deviation {worst:.3e}; {elapsed:?}"
    );
}

/// Criterion 10: for u = |x|^4 - 3|x|^2 the tensors from direct symbolic
/// differentiation and from the chain-rule assembly agree entry by entry,
/// exactly, for m <= 4, N <= 4.
#[test]
fn criterion_10_chain_rule_cross_validation() {
    let started = std::time::Instant::now();
    let mut entries_checked = 0usize;
    for dim in 1..=4usize {
        let u = RadialSymbolicExpr::radius_power(dim, 4)
            .sub(&RadialSymbolicExpr::radius_power(dim, 2).scale(&rat(3, 1)));
        for order in 1..=4u32 {
            let table = embedsharp::chain_rule::ChainRuleTable::new(dim, order);
            let s_derivs = embedsharp::chain_rule::radial_s_derivatives(&u, order as usize + 1);
            let assembled = table.assemble_symbolic(&s_derivs);
            let direct = DerivativeTensor::of_expression(&u, order);
            for key in MultiIndex::enumerate(dim, order) {
                assert_eq!(
                    assembled.entry(&key),
                    direct.entry(&key),
                    "dim {dim} order {order} key {key}"
                );
                entries_checked += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE 10 (chain-rule cross-validation): PASS - {entries_checked} entries exactly equal; {elapsed:?}"
    );
}

/// Sanity check on the frozen constant used by criterion 6's limit.
#[test]
fn limit_constant_is_sqrt_ell_times_sphere_area() {
    let ell = to_f64(&ell_symbolic(2, 2).unwrap());
    let omega = embedsharp::constants::sphere_area(1).to_f64();
    let limit = 2.0 * 2f64.sqrt() * std::f64::consts::PI;
    assert!((ell.sqrt() * omega - limit).abs() < 1e-12);
}
