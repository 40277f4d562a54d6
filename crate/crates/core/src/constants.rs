//! Closed-form evaluation of `l_N^m`, sphere surface areas, and the best
//! embedding constant `K_N = (sqrt(l_N) omega_{N-1})^(-1)`.
//!
//! The combinatorial formula for `l_N^m` is evaluated in exact rational
//! arithmetic only; the symbolic tensor route serves as an independent
//! oracle and the two must agree exactly before a best constant is issued.

use num::traits::{Pow, Signed, Zero};
use thiserror::Error;

use crate::poly::{binomial, factorial};
use crate::rational::{pi_rational, rat, rat_int, rational_sqrt, to_decimal_string, to_f64, Rational};
use crate::tensor::{ell_symbolic, TensorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstantsError {
    #[error("closed form l({n},{m}) = {closed_form} disagrees with symbolic oracle {symbolic}")]
    OracleMismatch {
        n: usize,
        m: u32,
        closed_form: String,
        symbolic: String,
    },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Falling factorial `(nu)_k = nu (nu-1) ... (nu-k+1)`, with `(nu)_0 = 1`.
pub fn pochhammer(nu: &Rational, k: u32) -> Rational {
    let mut out = rat_int(1);
    for j in 0..k as i64 {
        out *= nu - rat_int(j);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllMethod {
    ClosedForm,
    SymbolicOracle,
}

/// An exact value of `l_N^m` together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EllValue {
    pub n: usize,
    pub m: u32,
    pub value: Rational,
    pub method: EllMethod,
}

/// Exact evaluation of the explicit combinatorial expression for `l_N^m`:
/// an outer sum over `l = 0..floor(m/2)` weighted by factorials and a
/// falling factorial at the half-integer `(N-3)/2 + l`, with the inner
/// alternating binomial sum squared.
pub fn ell_closed_form(n: usize, m: u32) -> EllValue {
    assert!(n >= 1 && m >= 1);
    let half_arg = rat(n as i64 - 3, 2);
    let mut outer = Rational::zero();
    for l in 0..=(m / 2) {
        let mut inner = Rational::zero();
        for nn in m.div_ceil(2)..=(m - l) {
            let sign = if nn % 2 == 0 { 1 } else { -1 };
            let mut term = rat_int(2).pow(2 * nn as i32 - m as i32 + l as i32);
            term *= rat(sign, 2 * nn as i64);
            term *= binomial(nn as u64, (m - nn) as u64);
            term *= binomial((m - nn) as u64, l as u64);
            inner += term;
        }
        let mut weight = Rational::from_integer(factorial((m - 2 * l) as u64));
        weight *= Rational::from_integer(factorial(l as u64));
        weight *= pochhammer(&(half_arg.clone() + rat_int(l as i64)), l);
        outer += weight * inner.clone() * inner;
    }
    let value = Rational::from_integer(factorial(m as u64)) * outer;
    debug_assert!(value.is_positive(), "l_N^m must be positive");
    EllValue { n, m, value, method: EllMethod::ClosedForm }
}

/// `l_N^m` via the exact symbolic tensor route, wrapped as an [`EllValue`].
pub fn ell_oracle(n: usize, m: u32) -> Result<EllValue, ConstantsError> {
    let value = ell_symbolic(n, m)?;
    Ok(EllValue { n, m, value, method: EllMethod::SymbolicOracle })
}

/// Surface area of the unit sphere `S^m` as `coefficient * pi^pi_power`,
/// exactly. Odd and even `m` reduce the half-integer gamma factors to
/// rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereArea {
    pub m: u32,
    pub coefficient: Rational,
    pub pi_power: u32,
}

impl SphereArea {
    /// High-precision rational approximation (pi carried to ~79 digits).
    pub fn to_rational(&self) -> Rational {
        &self.coefficient * pi_rational().pow(self.pi_power as i32)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.to_rational())
    }
}

/// `omega_m = 2 pi^((m+1)/2) / Gamma((m+1)/2)`.
pub fn sphere_area(m: u32) -> SphereArea {
    if m % 2 == 1 {
        // Gamma(q) = (q-1)! with q = (m+1)/2.
        let q = m.div_ceil(2);
        SphereArea {
            m,
            coefficient: rat_int(2) / Rational::from_integer(factorial(q as u64 - 1)),
            pi_power: q,
        }
    } else {
        // Gamma(q + 1/2) = (2q)! sqrt(pi) / (4^q q!) with q = m/2.
        let q = m / 2;
        let coeff = rat_int(2) * rat_int(4).pow(q as i32)
            * Rational::from_integer(factorial(q as u64))
            / Rational::from_integer(factorial(2 * q as u64));
        SphereArea { m, coefficient: coeff, pi_power: q }
    }
}

/// The best constant `K_N`, kept with its exact ingredients.
#[derive(Debug, Clone, PartialEq)]
pub struct BestConstant {
    pub n: usize,
    /// Exact `l_N`, cross-checked between both routes.
    pub ell: Rational,
    /// `omega_{N-1}` as an exact coefficient times a power of pi.
    pub sphere: SphereArea,
    /// `K_N` as a high-precision rational (~50 safe digits).
    pub value: Rational,
}

/// Internal working precision for `sqrt(l_N)`; pi itself carries 79 digits.
const KN_SQRT_DIGITS: u32 = 60;

impl BestConstant {
    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        to_decimal_string(&self.value, digits)
    }
}

/// `K_N = (sqrt(l_N) omega_{N-1})^(-1)`, with `l_N` from the closed form
/// cross-checked exactly against the symbolic oracle.
pub fn best_constant(n: usize) -> Result<BestConstant, ConstantsError> {
    let closed = ell_closed_form(n, n as u32);
    let oracle = ell_oracle(n, n as u32)?;
    if closed.value != oracle.value {
        return Err(ConstantsError::OracleMismatch {
            n,
            m: n as u32,
            closed_form: closed.value.to_string(),
            symbolic: oracle.value.to_string(),
        });
    }
    let sphere = sphere_area(n as u32 - 1);
    let denom = rational_sqrt(&closed.value, KN_SQRT_DIGITS) * sphere.to_rational();
    let value = denom.recip();
    Ok(BestConstant { n, ell: closed.value, sphere, value })
}
