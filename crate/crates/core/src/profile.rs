//! Radial profiles and pointwise evaluation of `|grad^m u|` for radial `u`.
//!
//! A profile reports jets of itself as a function of `s = r^2/2`; combined
//! with a [`ChainRuleTable`] this yields the full derivative tensor of the
//! radial function at a point, and in particular `|grad^N u|(r)` for the
//! integrands of the verification module.
//!
//! The profiles here are the cast used throughout: the logarithmic kernel,
//! compactly supported test bumps, the mollified exponential for the
//! one-dimensional equality case, and the extremizing family
//! `u_eps = zeta * f_eps` built from the smooth cutoffs.

use thiserror::Error;

use crate::chain_rule::ChainRuleTable;
use crate::constants::sphere_area;
use crate::cutoff::{psi_jet, smooth_cutoff_jet, step_on_interval_jet};
use crate::jet::Jet;
use crate::quadrature::{integrate_adaptive, integrate_with_seams, QuadratureError, QuadratureResult};
use crate::tensor::DerivativeTensor;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("epsilon {0} outside the admissible range (0, 1/4)")]
    EpsilonOutOfRange(f64),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// A smooth radial function known through jets in `s = r^2/2`.
pub trait RadialProfile {
    /// Taylor coefficients of the profile as a function of `s`, expanded at
    /// `s = r^2/2`; requires `r > 0`.
    fn s_jet(&self, r: f64, order: usize) -> Jet;

    fn value_at_origin(&self) -> f64;

    /// The profile vanishes identically for `r >= support_radius()`
    /// (possibly only numerically, e.g. a decayed tail below 1e-17).
    fn support_radius(&self) -> f64;

    /// Radii where piecewise definitions join; quadrature splits here.
    fn seams(&self) -> Vec<f64>;

    fn value(&self, r: f64) -> f64 {
        if r == 0.0 {
            self.value_at_origin()
        } else {
            self.s_jet(r, 0).value()
        }
    }
}

impl RadialProfile for Box<dyn RadialProfile> {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        (**self).s_jet(r, order)
    }
    fn value_at_origin(&self) -> f64 {
        (**self).value_at_origin()
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
    fn seams(&self) -> Vec<f64> {
        (**self).seams()
    }
}

/// Jet of `r = sqrt(2s)` at `s = r^2/2`, used to push jets in `r` down to
/// jets in `s`.
fn radius_jet_in_s(r: f64, order: usize) -> Jet {
    Jet::variable(r * r / 2.0, order)
        .scale(2.0)
        .sqrt()
        .expect("r > 0")
}

/// Compose a jet in `r` (expanded at `r`) into a jet in `s`.
fn to_s_jet(jet_in_r: &Jet, r: f64, order: usize) -> Jet {
    radius_jet_in_s(r, order).compose_into(jet_in_r)
}

// ---------------------------------------------------------------------------
// elementary profiles

/// `u(r) = -log r`, i.e. `-(1/2) log(2s)`. Not integrable at infinity; used
/// as the reference kernel, not as a test function.
#[derive(Debug, Clone, Copy)]
pub struct LogProfile;

impl RadialProfile for LogProfile {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = -r.ln();
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            // d^k/ds^k [-(1/2) log 2s] = -(1/2)(-1)^(k-1)(k-1)! s^-k
            *c = 0.5 * if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 * s.powi(k as i32));
        }
        Jet::from_coeffs(s, coeffs)
    }
    fn value_at_origin(&self) -> f64 {
        f64::INFINITY
    }
    fn support_radius(&self) -> f64 {
        f64::INFINITY
    }
    fn seams(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// `u(r) = r^2 = 2s`.
#[derive(Debug, Clone, Copy)]
pub struct SquaredRadius;

impl RadialProfile for SquaredRadius {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        Jet::variable(r * r / 2.0, order).scale(2.0)
    }
    fn value_at_origin(&self) -> f64 {
        0.0
    }
    fn support_radius(&self) -> f64 {
        f64::INFINITY
    }
    fn seams(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// The standard bump `exp(1 - 1/(1 - (r/R)^2))` on `B_R`, peak value 1.
#[derive(Debug, Clone, Copy)]
pub struct SmoothBump {
    pub radius: f64,
}

impl RadialProfile for SmoothBump {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        let q0 = (r / self.radius).powi(2);
        if 1.0 - q0 < 1e-12 {
            // Too deep into the flat join for doubles; identically zero.
            return Jet::constant(s, 0.0, order);
        }
        let q = Jet::variable(s, order).scale(2.0 / (self.radius * self.radius));
        let w = Jet::constant(s, 1.0, order).sub(&q);
        let inner = Jet::constant(s, 1.0, order).sub(&w.recip().expect("w > 0"));
        inner.exp()
    }
    fn value_at_origin(&self) -> f64 {
        1.0
    }
    fn support_radius(&self) -> f64 {
        self.radius
    }
    fn seams(&self) -> Vec<f64> {
        vec![self.radius]
    }
}

/// `(1 - (r/R)^2)^p` on `B_R`. Only finitely smooth at the rim: pick
/// `p >= m + 1` when order-m derivatives must stay continuous.
#[derive(Debug, Clone, Copy)]
pub struct PolynomialBump {
    pub radius: f64,
    pub power: u32,
}

impl RadialProfile for PolynomialBump {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        if r >= self.radius {
            return Jet::constant(s, 0.0, order);
        }
        let q = Jet::variable(s, order).scale(2.0 / (self.radius * self.radius));
        let w = Jet::constant(s, 1.0, order).sub(&q);
        let mut out = Jet::constant(s, 1.0, order);
        for _ in 0..self.power {
            out = out.mul(&w);
        }
        out
    }
    fn value_at_origin(&self) -> f64 {
        1.0
    }
    fn support_radius(&self) -> f64 {
        self.radius
    }
    fn seams(&self) -> Vec<f64> {
        vec![self.radius]
    }
}

/// Gaussian `exp(-s/sigma^2)` brought to compact support by the smooth
/// step on `[cut_inner, cut_outer]`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianBump {
    pub sigma: f64,
    pub cut_inner: f64,
    pub cut_outer: f64,
}

impl RadialProfile for GaussianBump {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        if r >= self.cut_outer {
            return Jet::constant(s, 0.0, order);
        }
        let gauss = Jet::variable(s, order)
            .scale(-1.0 / (self.sigma * self.sigma))
            .exp();
        if r <= self.cut_inner {
            return gauss;
        }
        let cut_r = step_on_interval_jet(r, self.cut_inner, self.cut_outer, order);
        let keep = Jet::constant(r, 1.0, order).sub(&cut_r);
        gauss.mul(&to_s_jet(&keep, r, order))
    }
    fn value_at_origin(&self) -> f64 {
        1.0
    }
    fn support_radius(&self) -> f64 {
        self.cut_outer
    }
    fn seams(&self) -> Vec<f64> {
        vec![self.cut_inner, self.cut_outer]
    }
}

/// A bump supported on the annulus `a < r < b`, identically zero near the
/// origin: `e^4 psi(v) psi(1-v)` with `v = (r-a)/(b-a)`.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusBump {
    pub inner: f64,
    pub outer: f64,
}

impl RadialProfile for AnnulusBump {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        if r <= self.inner || r >= self.outer {
            return Jet::constant(s, 0.0, order);
        }
        let w = self.outer - self.inner;
        let v0 = (r - self.inner) / w;
        let up = rescaled(psi_jet(v0, order), r, 1.0 / w);
        let down = rescaled(psi_jet(1.0 - v0, order), r, -1.0 / w);
        let jet_r = up.mul(&down).scale(4.0f64.exp());
        to_s_jet(&jet_r, r, order)
    }
    fn value_at_origin(&self) -> f64 {
        0.0
    }
    fn support_radius(&self) -> f64 {
        self.outer
    }
    fn seams(&self) -> Vec<f64> {
        vec![self.inner, self.outer, 0.5 * (self.inner + self.outer)]
    }
}

/// Chain rule through an affine inner map: coefficients pick up powers of
/// the slope, the jet is re-expressed at outer variable `t`.
fn rescaled(g: Jet, t: f64, slope: f64) -> Jet {
    let coeffs = (0..=g.order())
        .map(|k| g.coeff(k) * slope.powi(k as i32))
        .collect();
    Jet::from_coeffs(t, coeffs)
}

/// `e^{-r}`, truncated numerically at `truncation` (tail below 4e-18 for
/// the default 40).
#[derive(Debug, Clone, Copy)]
pub struct ExpDecay {
    pub truncation: f64,
}

impl Default for ExpDecay {
    fn default() -> Self {
        Self { truncation: 40.0 }
    }
}

impl RadialProfile for ExpDecay {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let jet_r = Jet::variable(r, order).neg().exp();
        to_s_jet(&jet_r, r, order)
    }
    fn value_at_origin(&self) -> f64 {
        1.0
    }
    fn support_radius(&self) -> f64 {
        self.truncation
    }
    fn seams(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// `e^{-r}` driven to exact compact support by the smooth step on
/// `[inner, outer]`. Still monotone decreasing, so the one-dimensional
/// equality case survives the mollification exactly.
#[derive(Debug, Clone, Copy)]
pub struct MollifiedExpDecay {
    pub inner: f64,
    pub outer: f64,
}

impl RadialProfile for MollifiedExpDecay {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        if r >= self.outer {
            return Jet::constant(s, 0.0, order);
        }
        let exp_r = Jet::variable(r, order).neg().exp();
        let jet_r = if r <= self.inner {
            exp_r
        } else {
            let keep = Jet::constant(r, 1.0, order)
                .sub(&step_on_interval_jet(r, self.inner, self.outer, order));
            exp_r.mul(&keep)
        };
        to_s_jet(&jet_r, r, order)
    }
    fn value_at_origin(&self) -> f64 {
        1.0
    }
    fn support_radius(&self) -> f64 {
        self.outer
    }
    fn seams(&self) -> Vec<f64> {
        vec![self.inner, self.outer]
    }
}

// ---------------------------------------------------------------------------
// combinators

/// `v(x) = u(lambda x)`: jets in `s` scale by `lambda^(2k)`.
pub struct Dilated<P> {
    pub profile: P,
    pub lambda: f64,
}

impl<P: RadialProfile> RadialProfile for Dilated<P> {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let inner = self.profile.s_jet(self.lambda * r, order);
        let coeffs = (0..=order)
            .map(|k| inner.coeff(k) * self.lambda.powi(2 * k as i32))
            .collect();
        Jet::from_coeffs(r * r / 2.0, coeffs)
    }
    fn value_at_origin(&self) -> f64 {
        self.profile.value_at_origin()
    }
    fn support_radius(&self) -> f64 {
        self.profile.support_radius() / self.lambda
    }
    fn seams(&self) -> Vec<f64> {
        self.profile.seams().iter().map(|s| s / self.lambda).collect()
    }
}

/// Weighted sum of profiles.
pub struct Superposition {
    pub terms: Vec<(f64, Box<dyn RadialProfile>)>,
}

impl RadialProfile for Superposition {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let mut acc = Jet::constant(r * r / 2.0, 0.0, order);
        for (w, p) in &self.terms {
            acc = acc.add(&p.s_jet(r, order).scale(*w));
        }
        acc
    }
    fn value_at_origin(&self) -> f64 {
        self.terms.iter().map(|(w, p)| w * p.value_at_origin()).sum()
    }
    fn support_radius(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, p)| p.support_radius())
            .fold(0.0, f64::max)
    }
    fn seams(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.terms.iter().flat_map(|(_, p)| p.seams()).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

// ---------------------------------------------------------------------------
// the extremizing family

/// The logarithmic extremizing profile
/// `u_eps(x) = zeta(|x|) f_eps(|x|)` with
/// `f_eps(t) = -log(eps) - int_eps^t phi(sigma/eps)/sigma dsigma` and
/// `zeta` the radial cutoff equal to 1 on `B_1`, 0 outside `B_2`.
///
/// Piecewise structure in `t = |x|`:
/// constant on `[0, eps/2]`, the integral transition on `[eps/2, eps]`,
/// exactly `-log t` on `[eps, 1]`, `zeta(t) * (-log t)` on `[1, 2]`,
/// and 0 beyond 2.
pub struct ExtremalProfile {
    epsilon: f64,
    /// `int_{1/2}^1 phi(w)/w dw`; the bounded offset in `u_eps(0)`.
    plateau_offset: f64,
}

/// Value tolerance for the internal transition-zone quadratures.
const PROFILE_VALUE_TOL: f64 = 1e-13;

impl ExtremalProfile {
    pub fn new(epsilon: f64) -> Result<Self, ProfileError> {
        if !(epsilon > 0.0 && epsilon < 0.25) {
            return Err(ProfileError::EpsilonOutOfRange(epsilon));
        }
        let plateau_offset = step_over_w_integral(0.5)?;
        Ok(Self { epsilon, plateau_offset })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The constant `u_eps(0) - log(1/eps)`; independent of `eps`.
    pub fn origin_offset(&self) -> f64 {
        self.plateau_offset
    }

    /// Jet of `f_eps` in `t` on the transition zone `(eps/2, eps)`.
    fn transition_jet_r(&self, t: f64, order: usize) -> Jet {
        let value = -self.epsilon.ln()
            + step_over_w_integral(t / self.epsilon).expect("fixed smooth integrand");
        if order == 0 {
            return Jet::from_coeffs(t, vec![value]);
        }
        // f' = -phi(t/eps)/t, exact as jets; integrate for the value.
        let phi = smooth_cutoff_jet(t, self.epsilon, order - 1);
        let inv_t = Jet::variable(t, order - 1).recip().expect("t > 0");
        phi.mul(&inv_t).neg().integrate(value).truncate(order)
    }
}

/// `int_tau^1 phi(w)/w dw` for `tau <= 1` (zero for `tau >= 1`).
fn step_over_w_integral(tau: f64) -> Result<f64, QuadratureError> {
    let lo = tau.max(0.5);
    if lo >= 1.0 {
        return Ok(0.0);
    }
    let r = integrate_adaptive(
        |w| crate::cutoff::smooth_step(w) / w,
        lo,
        1.0,
        PROFILE_VALUE_TOL,
    )?;
    Ok(r.value)
}

impl RadialProfile for ExtremalProfile {
    fn s_jet(&self, r: f64, order: usize) -> Jet {
        let s = r * r / 2.0;
        let eps = self.epsilon;
        if r >= 2.0 {
            return Jet::constant(s, 0.0, order);
        }
        if r <= 0.5 * eps {
            // f' vanishes identically here: u is the constant u_eps(0).
            return Jet::constant(s, -eps.ln() + self.plateau_offset, order);
        }
        if r < eps {
            return to_s_jet(&self.transition_jet_r(r, order), r, order);
        }
        // On [eps, 2): u = zeta(t) * (-log t); zeta is exactly 1 below 1.
        let mlog = Jet::variable(r, order).log().expect("r > 0").neg();
        let jet_r = if r <= 1.0 {
            mlog
        } else {
            let zeta = Jet::constant(r, 1.0, order)
                .sub(&step_on_interval_jet(r, 1.0, 2.0, order));
            zeta.mul(&mlog)
        };
        to_s_jet(&jet_r, r, order)
    }

    fn value_at_origin(&self) -> f64 {
        -self.epsilon.ln() + self.plateau_offset
    }

    fn support_radius(&self) -> f64 {
        2.0
    }

    fn seams(&self) -> Vec<f64> {
        vec![0.5 * self.epsilon, self.epsilon, 1.0, 2.0]
    }
}

// ---------------------------------------------------------------------------
// pointwise tensor norms

/// Reusable evaluator for `|grad^m u|` of radial profiles: holds the
/// chain-rule table for one `(dim, order)` pair.
pub struct RadialNormEvaluator {
    table: ChainRuleTable,
}

impl RadialNormEvaluator {
    pub fn new(dim: usize, order: u32) -> Self {
        Self { table: ChainRuleTable::new(dim, order) }
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn order(&self) -> u32 {
        self.table.order()
    }

    /// Full derivative tensor of the profile at an arbitrary point.
    pub fn tensor_at(&self, profile: &dyn RadialProfile, x: &[f64]) -> DerivativeTensor<f64> {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let m = self.table.order() as usize;
        let jet = profile.s_jet(r, m);
        let s_derivs: Vec<f64> = (0..=m).map(|d| jet.derivative(d)).collect();
        self.table.assemble_at(&s_derivs, x)
    }

    /// `|grad^m u|(r)`, evaluated on the first axis; radiality makes the
    /// direction immaterial.
    pub fn norm(&self, profile: &dyn RadialProfile, r: f64) -> f64 {
        let mut x = vec![0.0; self.table.dim()];
        x[0] = r;
        self.norm_at(profile, &x)
    }

    pub fn norm_at(&self, profile: &dyn RadialProfile, x: &[f64]) -> f64 {
        self.tensor_at(profile, x).frobenius_norm_sq_f64().sqrt()
    }
}

/// `|grad^N u|(r)` with the tensor order equal to the dimension, the
/// combination entering the embedding inequality.
pub fn radial_grad_norm(profile: &dyn RadialProfile, dim: usize, r: f64) -> f64 {
    RadialNormEvaluator::new(dim, dim as u32).norm(profile, r)
}

// ---------------------------------------------------------------------------
// the sharpness ratio

/// The quotient `int |grad^N u_eps| / u_eps(0)` that converges to
/// `sqrt(l_N) omega_{N-1}` as `eps -> 0`.
#[derive(Debug, Clone)]
pub struct ExtremalRatio {
    pub dim: usize,
    pub epsilon: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub quadrature: QuadratureResult,
}

pub fn extremal_ratio(dim: usize, epsilon: f64, tol: f64) -> Result<ExtremalRatio, ProfileError> {
    let u = ExtremalProfile::new(epsilon)?;
    let ev = RadialNormEvaluator::new(dim, dim as u32);
    let omega = sphere_area(dim as u32 - 1).to_f64();
    let q = integrate_with_seams(
        |r| ev.norm(&u, r) * r.powi(dim as i32 - 1),
        0.0,
        u.support_radius(),
        &u.seams(),
        tol,
    )?;
    let numerator = omega * q.value;
    let denominator = u.value_at_origin();
    Ok(ExtremalRatio {
        dim,
        epsilon,
        numerator,
        denominator,
        ratio: numerator / denominator,
        quadrature: q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64 as rat_f64;
    use crate::tensor::ell_symbolic;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn log_profile_norm_reproduces_ell() {
        // |grad^m log| = sqrt(l_N^m) / r^m for m = N, r in {1/2, 1, 2}.
        for dim in 1..=4usize {
            let ev = RadialNormEvaluator::new(dim, dim as u32);
            let ell = rat_f64(&ell_symbolic(dim, dim as u32).unwrap());
            for r in [0.5f64, 1.0, 2.0] {
                let want = ell.sqrt() / r.powi(dim as i32);
                let got = ev.norm(&LogProfile, r);
                assert_relative_eq!(got, want, max_relative = 1e-10);
            }
        }
        // The worked example: N = 2, r = 2 -> sqrt(2)/4.
        assert_relative_eq!(
            radial_grad_norm(&LogProfile, 2, 2.0),
            2f64.sqrt() / 4.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn squared_radius_hessian_norm_is_constant() {
        // u = |x|^2 has Hessian 2 I: |grad^2 u| = 2 sqrt(2) in R^2.
        let ev = RadialNormEvaluator::new(2, 2);
        for r in [0.3, 1.0, 2.5] {
            assert_relative_eq!(
                ev.norm(&SquaredRadius, r),
                2.0 * 2f64.sqrt(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn norm_is_direction_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let dim = 3;
        let ev = RadialNormEvaluator::new(dim, 3);
        let bump = SmoothBump { radius: 1.5 };
        for r in [0.4, 0.9, 1.2] {
            let reference = ev.norm(&bump, r);
            for _ in 0..5 {
                let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let n: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                v.iter_mut().for_each(|c| *c *= r / n);
                let got = ev.norm_at(&bump, &v);
                assert_relative_eq!(got, reference, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn extremal_profile_origin_value() {
        // u_eps(0) = log(1/eps) + c with the same bounded c for every eps.
        let mut offsets = Vec::new();
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let u = ExtremalProfile::new(eps).unwrap();
            let off = u.value_at_origin() - (1.0 / eps).ln();
            assert!(off > 0.0 && off < std::f64::consts::LN_2);
            offsets.push(off);
        }
        for w in offsets.windows(2) {
            assert_relative_eq!(w[0], w[1], max_relative = 1e-10);
        }
    }

    #[test]
    fn extremal_profile_is_exactly_log_in_the_middle() {
        let eps = 1e-3;
        let u = ExtremalProfile::new(eps).unwrap();
        for r in [eps, 1e-2, 0.1, 0.5, 1.0] {
            assert_relative_eq!(u.value(r), -r.ln(), epsilon = 1e-14);
        }
        // Supported in B_2.
        assert_eq!(u.value(2.0), 0.0);
        assert_eq!(u.value(2.5), 0.0);
    }

    #[test]
    fn extremal_profile_value_is_continuous_across_seams() {
        let eps = 1e-2;
        let u = ExtremalProfile::new(eps).unwrap();
        for seam in u.seams() {
            let below = u.value(seam * (1.0 - 1e-9));
            let above = u.value(seam * (1.0 + 1e-9));
            assert_relative_eq!(below, above, epsilon = 1e-6);
        }
        // And against the plateau value at the origin side.
        assert_relative_eq!(
            u.value(0.4 * eps),
            u.value_at_origin(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn extremal_gradient_blowup_is_order_inverse_eps() {
        // |grad^k u_eps| = O(eps^-k) on B_eps: measured, loose bound.
        let dim = 2;
        for eps in [1e-1, 1e-2, 1e-3] {
            let u = ExtremalProfile::new(eps).unwrap();
            for k in 1..=2u32 {
                let ev = RadialNormEvaluator::new(dim, k);
                let mut worst: f64 = 0.0;
                for i in 1..20 {
                    let r = eps * (0.5 + 0.5 * i as f64 / 20.0);
                    worst = worst.max(ev.norm(&u, r) * eps.powi(k as i32));
                }
                assert!(worst < 50.0, "eps {eps} k {k}: {worst}");
                assert!(worst > 0.0);
            }
        }
    }

    #[test]
    fn epsilon_range_is_enforced() {
        assert!(matches!(
            ExtremalProfile::new(0.3),
            Err(ProfileError::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            ExtremalProfile::new(0.0),
            Err(ProfileError::EpsilonOutOfRange(_))
        ));
    }

    #[test]
    fn dilation_keeps_origin_value_and_scales_jets() {
        let bump = SmoothBump { radius: 2.0 };
        let lambda = 2.0;
        let d = Dilated { profile: bump, lambda };
        assert_eq!(d.value_at_origin(), bump.value_at_origin());
        assert_relative_eq!(d.support_radius(), 1.0);
        let r = 0.3;
        let inner = bump.s_jet(lambda * r, 3);
        let outer = d.s_jet(r, 3);
        for k in 0..=3 {
            assert_relative_eq!(
                outer.coeff(k),
                inner.coeff(k) * lambda.powi(2 * k as i32),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn extremal_ratio_one_dimension_approaches_two() {
        // 1/K_1 = 2; at eps = 1e-4 the ratio sits within 10%, and closer
        // than at eps = 1e-2 (the deficit shrinks like 1/log(1/eps)).
        let coarse = extremal_ratio(1, 1e-2, 1e-9).unwrap();
        let fine = extremal_ratio(1, 1e-4, 1e-9).unwrap();
        assert!((fine.ratio - 2.0).abs() / 2.0 < 0.10, "ratio {}", fine.ratio);
        assert!(fine.ratio > 2.0);
        assert!((fine.ratio - 2.0).abs() < (coarse.ratio - 2.0).abs());
    }

    #[test]
    fn extremal_ratio_two_dimensions_decreases_toward_limit() {
        let limit = 2.0 * 2f64.sqrt() * std::f64::consts::PI;
        let r2 = extremal_ratio(2, 1e-2, 1e-9).unwrap();
        let r3 = extremal_ratio(2, 1e-3, 1e-9).unwrap();
        assert!(r2.ratio > r3.ratio && r3.ratio > limit);
    }
}
