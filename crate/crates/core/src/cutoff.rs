//! The smooth step used by every cutoff in the crate:
//!
//! ```text
//!   psi(t) = exp(-1/t) for t > 0, else 0
//!   phi(t) = psi(2t-1) / (psi(2t-1) + psi(2-2t))
//! ```
//!
//! `phi` is identically 0 on `[0, 1/2]`, identically 1 on `[1, inf)`, climbs
//! strictly in between, and is infinitely flat at both plateau edges, so
//! jets of any order are exact constants on the plateaus.

use crate::jet::Jet;

/// Jet of `psi(u) = exp(-1/u)` at `u0`; the zero jet for `u0 <= 0`.
pub fn psi_jet(u0: f64, order: usize) -> Jet {
    if u0 <= 0.0 {
        return Jet::constant(u0, 0.0, order);
    }
    let u = Jet::variable(u0, order);
    u.recip().expect("u0 > 0").neg().exp()
}

/// Jet of the step `phi` at `t`.
pub fn smooth_step_jet(t: f64, order: usize) -> Jet {
    if t <= 0.5 {
        return Jet::constant(t, 0.0, order);
    }
    if t >= 1.0 {
        return Jet::constant(t, 1.0, order);
    }
    // psi(2t - 1) and psi(2 - 2t), both re-expressed as jets in t.
    let up = affine_jet(t, 2.0 * t - 1.0, 2.0, order, psi_jet);
    let down = affine_jet(t, 2.0 - 2.0 * t, -2.0, order, psi_jet);
    let den = up.add(&down);
    up.div(&den).expect("den > 0 in the transition zone")
}

/// Jet in `t` of `f(u(t))` for the affine inner map with value `inner0`
/// and derivative `slope` at `t`.
fn affine_jet(t: f64, inner0: f64, slope: f64, order: usize, f: impl Fn(f64, usize) -> Jet) -> Jet {
    let g = f(inner0, order);
    let coeffs = (0..=order).map(|k| g.coeff(k) * slope.powi(k as i32)).collect();
    Jet::from_coeffs(t, coeffs)
}

/// Value of `phi` at `t`.
pub fn smooth_step(t: f64) -> f64 {
    smooth_step_jet(t, 0).value()
}

/// Jet of `phi(t / delta)`: identically 0 below `delta/2`, identically 1
/// above `delta`.
pub fn smooth_cutoff_jet(t: f64, delta: f64, order: usize) -> Jet {
    assert!(t >= 0.0 && delta > 0.0);
    let g = smooth_step_jet(t / delta, order);
    let coeffs = (0..=order)
        .map(|k| g.coeff(k) * delta.powi(-(k as i32)))
        .collect();
    Jet::from_coeffs(t, coeffs)
}

/// Jet (in `t`) of the step that climbs from 0 at `t <= a` to 1 at
/// `t >= b`.
pub fn step_on_interval_jet(t: f64, a: f64, b: f64, order: usize) -> Jet {
    assert!(a < b);
    // Map [a, b] onto phi's transition zone [1/2, 1].
    let slope = 1.0 / (2.0 * (b - a));
    let u = 0.5 + (t - a) * slope;
    let g = smooth_step_jet(u, order);
    let coeffs = (0..=order).map(|k| g.coeff(k) * slope.powi(k as i32)).collect();
    Jet::from_coeffs(t, coeffs)
}
