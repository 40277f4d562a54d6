//! The numerical certificates: the weak fundamental-solution identity, the
//! embedding inequality with its best constant, and the orthogonal
//! invariance suite.
//!
//! Everything is reduced to 1-D radial quadrature. The contraction of two
//! radial derivative tensors is itself radial, so the pairings are
//! evaluated on the first axis and integrated against `r^(N-1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constants::{best_constant, sphere_area, ConstantsError};
use crate::orthogonal::{FloatOrthogonal, RationalOrthogonal};
use crate::poly::MultivariatePolynomial as Poly;
use crate::profile::{
    AnnulusBump, Dilated, GaussianBump, MollifiedExpDecay, PolynomialBump, ProfileError,
    RadialNormEvaluator, RadialProfile, SmoothBump, Superposition,
};
use crate::quadrature::{integrate_with_seams, QuadratureError, QuadratureResult};
use crate::radial::RadialSymbolicExpr;
use crate::rational::to_f64;
use crate::tensor::{ell_symbolic, DerivativeTensor, TensorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("embedding inequality violated for `{profile_id}` in dimension {dim}: sup {lhs} > bound {rhs} + slack {slack}")]
    InequalityViolated {
        dim: usize,
        profile_id: String,
        lhs: f64,
        rhs: f64,
        slack: f64,
    },
}

// ---------------------------------------------------------------------------
// weak fundamental-solution identity

/// One verification of the distributional identity: for compactly
/// supported radial `v`,
/// `int |x|^N (grad^N v).(grad^N log|x|) = -l_N omega_{N-1} v(0)`.
#[derive(Debug, Clone)]
pub struct WeakIdentityReport {
    pub dim: usize,
    pub profile_id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / |rhs|`, or `|lhs|` when `rhs = 0`.
    pub relative_error: f64,
    pub quadrature: QuadratureResult,
}

/// Evaluates both sides of the weak identity. The left side is
/// `omega_{N-1} int g(r) r^(N-1) dr` with
/// `g(r) = r^N (grad^N v).(grad^N log|x|)` evaluated on the first axis.
pub fn weak_identity_check(
    dim: usize,
    profile: &dyn RadialProfile,
    profile_id: &str,
    tol: f64,
) -> Result<WeakIdentityReport, VerifyError> {
    assert!(dim >= 2, "the identity needs N >= 2");
    let order = dim as u32;
    let log_tensor = DerivativeTensor::log_derivative_tensor(dim, order);
    let ev = RadialNormEvaluator::new(dim, order);
    let omega = sphere_area(order - 1).to_f64();
    let ell = to_f64(&ell_symbolic(dim, order)?);

    let pairing = |r: f64| {
        let mut x = vec![0.0; dim];
        x[0] = r;
        let v_tensor = ev.tensor_at(profile, &x);
        let log_at = log_tensor.eval_f64(&x);
        let contraction = v_tensor
            .contract_f64(&log_at)
            .expect("tensors share a shape by construction");
        r.powi(dim as i32) * contraction
    };

    let q = integrate_with_seams(
        |r| pairing(r) * r.powi(dim as i32 - 1),
        0.0,
        profile.support_radius(),
        &profile.seams(),
        tol,
    )?;
    let lhs = omega * q.value;
    let rhs = -ell * omega * profile.value_at_origin();
    let relative_error = if rhs == 0.0 {
        lhs.abs()
    } else {
        (lhs - rhs).abs() / rhs.abs()
    };
    Ok(WeakIdentityReport {
        dim,
        profile_id: profile_id.to_string(),
        lhs,
        rhs,
        relative_error,
        quadrature: q,
    })
}

/// The radial pairing integrand `g(r)` evaluated at an arbitrary point;
/// exposed for the direction-independence and Cauchy-Schwarz diagnostics.
pub fn pairing_at(
    dim: usize,
    profile: &dyn RadialProfile,
    x: &[f64],
) -> (f64, f64, f64) {
    let order = dim as u32;
    let ev = RadialNormEvaluator::new(dim, order);
    let log_tensor = DerivativeTensor::log_derivative_tensor(dim, order);
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let v_tensor = ev.tensor_at(profile, x);
    let log_at = log_tensor.eval_f64(x);
    let contraction = v_tensor.contract_f64(&log_at).expect("same shape");
    let norm_v = v_tensor.frobenius_norm_sq_f64().sqrt();
    let norm_log = log_at.frobenius_norm_sq_f64().sqrt();
    (r.powi(dim as i32) * contraction, norm_v, norm_log)
}

// ---------------------------------------------------------------------------
// embedding inequality

/// One check of `v(0) <= K_N int |grad^N v|` for a profile peaked at the
/// origin, with the margin `(rhs - lhs)/rhs`.
#[derive(Debug, Clone)]
pub struct EmbeddingCheck {
    pub dim: usize,
    pub profile_id: String,
    /// `v(0) = sup |v|`.
    pub lhs: f64,
    /// `K_N int |grad^N v|`.
    pub rhs: f64,
    pub margin: f64,
    /// `int |grad^N v|` itself.
    pub seminorm: f64,
    /// Absolute slack granted to the inequality from the quadrature error.
    pub slack: f64,
    pub quadrature: QuadratureResult,
}

pub fn embedding_inequality_check(
    dim: usize,
    profile: &dyn RadialProfile,
    profile_id: &str,
    tol: f64,
) -> Result<EmbeddingCheck, VerifyError> {
    let kn = best_constant(dim)?;
    let omega = sphere_area(dim as u32 - 1).to_f64();
    let ev = RadialNormEvaluator::new(dim, dim as u32);
    let q = integrate_with_seams(
        |r| ev.norm(profile, r) * r.powi(dim as i32 - 1),
        0.0,
        profile.support_radius(),
        &profile.seams(),
        tol,
    )?;
    let seminorm = omega * q.value;
    let lhs = profile.value_at_origin();
    let rhs = kn.value_f64() * seminorm;
    let slack = kn.value_f64() * omega * q.error_estimate + 1e-12 * rhs.abs();
    if lhs > rhs + slack {
        return Err(VerifyError::InequalityViolated {
            dim,
            profile_id: profile_id.to_string(),
            lhs,
            rhs,
            slack,
        });
    }
    Ok(EmbeddingCheck {
        dim,
        profile_id: profile_id.to_string(),
        lhs,
        rhs,
        margin: (rhs - lhs) / rhs,
        seminorm,
        slack,
        quadrature: q,
    })
}

// ---------------------------------------------------------------------------
// profile corpora

/// Compactly supported smooth radial test profiles for the weak identity.
pub fn weak_identity_corpus(dim: usize) -> Vec<(String, Box<dyn RadialProfile>)> {
    let p = dim as u32 + 3;
    vec![
        ("smooth_bump_r1".to_string(), Box::new(SmoothBump { radius: 1.0 }) as Box<dyn RadialProfile>),
        ("poly_bump_r1".to_string(), Box::new(PolynomialBump { radius: 1.0, power: p })),
        (
            "gaussian_cut".to_string(),
            Box::new(GaussianBump { sigma: 0.4, cut_inner: 1.0, cut_outer: 2.0 }),
        ),
    ]
}

/// Ten profiles peaked at the origin for the strictness corpus.
pub fn inequality_corpus(dim: usize) -> Vec<(String, Box<dyn RadialProfile>)> {
    let p = dim as u32;
    let mut corpus: Vec<(String, Box<dyn RadialProfile>)> = vec![
        ("smooth_bump_r1".into(), Box::new(SmoothBump { radius: 1.0 })),
        ("smooth_bump_r2".into(), Box::new(SmoothBump { radius: 2.0 })),
        ("poly_bump_low".into(), Box::new(PolynomialBump { radius: 1.0, power: p + 2 })),
        ("poly_bump_high".into(), Box::new(PolynomialBump { radius: 1.5, power: p + 4 })),
        (
            "gaussian_tight".into(),
            Box::new(GaussianBump { sigma: 0.5, cut_inner: 1.5, cut_outer: 2.5 }),
        ),
        (
            "gaussian_wide".into(),
            Box::new(GaussianBump { sigma: 1.0, cut_inner: 2.0, cut_outer: 4.0 }),
        ),
        (
            "dilated_bump".into(),
            Box::new(Dilated { profile: SmoothBump { radius: 1.0 }, lambda: 3.0 }),
        ),
        (
            "bump_pair".into(),
            Box::new(Superposition {
                terms: vec![
                    (1.0, Box::new(SmoothBump { radius: 1.0 })),
                    (0.5, Box::new(SmoothBump { radius: 2.0 })),
                ],
            }),
        ),
        (
            "bump_plus_gaussian".into(),
            Box::new(Superposition {
                terms: vec![
                    (1.0, Box::new(PolynomialBump { radius: 1.0, power: p + 3 })),
                    (0.25, Box::new(GaussianBump { sigma: 0.7, cut_inner: 1.0, cut_outer: 2.0 })),
                ],
            }),
        ),
        (
            "mollified_exp".into(),
            Box::new(MollifiedExpDecay { inner: 3.0, outer: 6.0 }),
        ),
    ];
    debug_assert_eq!(corpus.len(), 10);
    // Keep ids stable and unique.
    corpus.sort_by(|a, b| a.0.cmp(&b.0));
    corpus
}

/// A profile vanishing near the origin (delta pairing must vanish).
pub fn annulus_profile() -> (String, Box<dyn RadialProfile>) {
    ("annulus".to_string(), Box::new(AnnulusBump { inner: 0.5, outer: 1.5 }))
}

// ---------------------------------------------------------------------------
// invariance suite

/// Outcome of the exact and floating-point orthogonal invariance runs.
#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub seed: u64,
    pub exact_cases: usize,
    pub exact_failures: usize,
    pub float_cases: usize,
    pub max_float_deviation: f64,
    pub max_contraction_deviation: f64,
}

impl InvarianceReport {
    pub fn passed(&self, float_tol: f64) -> bool {
        self.exact_failures == 0
            && self.max_float_deviation <= float_tol
            && self.max_contraction_deviation <= float_tol
    }
}

/// Symbolic inputs exercised by the invariance suite.
fn invariance_inputs(dim: usize, order: u32) -> Vec<(String, DerivativeTensor<RadialSymbolicExpr>)> {
    let mut v = Vec::new();
    v.push((
        "log_kernel".to_string(),
        DerivativeTensor::log_derivative_tensor(dim, order),
    ));
    // |x|^4 - 3 |x|^2: radial polynomial.
    let u1 = RadialSymbolicExpr::radius_power(dim, 4)
        .sub(&RadialSymbolicExpr::radius_power(dim, 2).scale(&crate::rational::rat(3, 1)));
    v.push(("radial_poly".to_string(), DerivativeTensor::of_expression(&u1, order)));
    // x_1 |x|: odd radius power, not radial.
    let u2 = RadialSymbolicExpr::from_term(Poly::variable(dim, 0), 1);
    v.push(("x1_radius".to_string(), DerivativeTensor::of_expression(&u2, order)));
    v
}

/// Exact invariance: for rational orthogonal `A`,
/// `|grad^m u_A|^2(x) == |grad^m u|^2(Ax)` as identical normal forms.
/// Returns the number of (input, matrix) cases and how many failed.
pub fn exact_invariance_run(
    max_dim: usize,
    max_order: u32,
    matrices_per_case: usize,
    seed: u64,
) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut failures = 0;
    for dim in 2..=max_dim {
        for order in 1..=max_order {
            for (_, tensor) in invariance_inputs(dim, order) {
                let norm = tensor.frobenius_norm_sq();
                for _ in 0..matrices_per_case {
                    let a = RationalOrthogonal::random(dim, &mut rng);
                    let transformed = tensor
                        .orthogonal_transform(&a)
                        .expect("dimensions match");
                    let lhs = transformed.frobenius_norm_sq();
                    let rhs = norm.compose_orthogonal(a.rows());
                    cases += 1;
                    if !lhs.sub(&rhs).is_zero() {
                        failures += 1;
                    }
                }
            }
        }
    }
    (cases, failures)
}

/// Floating-point invariance at random points and rotations: returns the
/// number of cases, the worst relative norm deviation, and the worst
/// relative contraction deviation (polarized form).
pub fn float_invariance_run(
    max_dim: usize,
    max_order: u32,
    matrices_per_case: usize,
    seed: u64,
) -> (usize, f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut worst_norm: f64 = 0.0;
    let mut worst_contraction: f64 = 0.0;
    for dim in 2..=max_dim {
        for order in 1..=max_order {
            let inputs = invariance_inputs(dim, order);
            for _ in 0..matrices_per_case {
                let a = FloatOrthogonal::random(dim, &mut rng);
                let x: Vec<f64> = (0..dim)
                    .map(|_| rng.random_range(0.25..1.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 })
                    .collect();
                let y = a.apply(&x);
                for (_, tensor) in &inputs {
                    let at_y = tensor.eval_f64(&y);
                    let transformed = at_y.orthogonal_transform_f64(&a).expect("dim ok");
                    let n_lhs = transformed.frobenius_norm_sq_f64().sqrt();
                    let n_rhs = at_y.frobenius_norm_sq_f64().sqrt();
                    worst_norm = worst_norm.max((n_lhs - n_rhs).abs() / n_rhs.abs().max(1e-300));
                    cases += 1;
                }
                // Polarized form on a pair of distinct tensors. The
                // contraction itself may vanish at a random radius, so the
                // deviation is measured against the Cauchy-Schwarz scale.
                if inputs.len() >= 2 {
                    let t1 = inputs[0].1.eval_f64(&y);
                    let t2 = inputs[1].1.eval_f64(&y);
                    let c_before = t1.contract_f64(&t2).expect("same shape");
                    let s1 = t1.orthogonal_transform_f64(&a).expect("dim ok");
                    let s2 = t2.orthogonal_transform_f64(&a).expect("dim ok");
                    let c_after = s1.contract_f64(&s2).expect("same shape");
                    let scale = (t1.frobenius_norm_sq_f64() * t2.frobenius_norm_sq_f64())
                        .sqrt()
                        .max(1e-300);
                    worst_contraction =
                        worst_contraction.max((c_after - c_before).abs() / scale);
                }
            }
        }
    }
    (cases, worst_norm, worst_contraction)
}

/// The full suite at the documented scales.
pub fn invariance_suite(
    max_dim_exact: usize,
    max_order_exact: u32,
    exact_matrices: usize,
    max_dim_float: usize,
    max_order_float: u32,
    float_matrices: usize,
    seed: u64,
) -> InvarianceReport {
    let (exact_cases, exact_failures) =
        exact_invariance_run(max_dim_exact, max_order_exact, exact_matrices, seed);
    let (float_cases, max_float_deviation, max_contraction_deviation) =
        float_invariance_run(max_dim_float, max_order_float, float_matrices, seed ^ 0x9e37_79b9);
    InvarianceReport {
        seed,
        exact_cases,
        exact_failures,
        float_cases,
        max_float_deviation,
        max_contraction_deviation,
    }
}
