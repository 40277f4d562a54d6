//! Truncated Taylor expansions ("jets") of one-variable functions.
//!
//! A jet carries the coefficients `c_0..c_K` of `f(t0 + h) = sum c_k h^k`
//! around a base point `t0`. Arithmetic uses the standard truncated-series
//! recurrences and keeps the order fixed, so high-order derivatives of
//! composite radial profiles come out without any symbolic machinery.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("division by a jet with zero constant term")]
    DivisionByZeroConstant,
    #[error("log of a jet with non-positive constant term")]
    LogNonPositive,
    #[error("sqrt of a jet with negative constant term")]
    SqrtNegative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// The constant function `value`, expanded at `base`.
    pub fn constant(base: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { base, coeffs }
    }

    /// The identity function `t`, expanded at `base`.
    pub fn variable(base: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = base;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Self { base, coeffs }
    }

    pub fn from_coeffs(base: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { base, coeffs }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `f^(k)(base) = k! c_k`.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for j in 2..=k {
            fact *= j as f64;
        }
        fact * self.coeff(k)
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "jet orders must match");
        assert!(
            (self.base - other.base).abs() <= 1e-12 * self.base.abs().max(1.0),
            "jet base points must match"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { base: self.base, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self { base: self.base, coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let n = self.coeffs.len();
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += self.coeffs[i] * other.coeffs[k - i];
            }
            *c = acc;
        }
        Self { base: self.base, coeffs }
    }

    pub fn div(&self, other: &Self) -> Result<Self, JetError> {
        self.check_compatible(other);
        if other.coeffs[0] == 0.0 {
            return Err(JetError::DivisionByZeroConstant);
        }
        let n = self.coeffs.len();
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for i in 0..k {
                acc -= q[i] * other.coeffs[k - i];
            }
            q[k] = acc / other.coeffs[0];
        }
        Ok(Self { base: self.base, coeffs: q })
    }

    pub fn recip(&self) -> Result<Self, JetError> {
        Jet::constant(self.base, 1.0, self.order()).div(self)
    }

    /// `exp(f)`: `k e_k = sum_{j=1..k} j a_j e_{k-j}`.
    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let mut e = vec![0.0; n];
        e[0] = self.coeffs[0].exp();
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.coeffs[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Self { base: self.base, coeffs: e }
    }

    /// `log(f)`: from `f l' = f'`.
    pub fn log(&self) -> Result<Self, JetError> {
        if self.coeffs[0] <= 0.0 {
            return Err(JetError::LogNonPositive);
        }
        let n = self.coeffs.len();
        let mut l = vec![0.0; n];
        l[0] = self.coeffs[0].ln();
        for k in 1..n {
            let mut acc = k as f64 * self.coeffs[k];
            for j in 1..k {
                acc -= (k - j) as f64 * self.coeffs[j] * l[k - j];
            }
            l[k] = acc / (k as f64 * self.coeffs[0]);
        }
        Ok(Self { base: self.base, coeffs: l })
    }

    /// `sqrt(f)`: from `s^2 = f`.
    pub fn sqrt(&self) -> Result<Self, JetError> {
        if self.coeffs[0] < 0.0 {
            return Err(JetError::SqrtNegative);
        }
        let n = self.coeffs.len();
        let mut s = vec![0.0; n];
        s[0] = self.coeffs[0].sqrt();
        if n > 1 && s[0] == 0.0 {
            return Err(JetError::DivisionByZeroConstant);
        }
        for k in 1..n {
            let mut acc = self.coeffs[k];
            for i in 1..k {
                acc -= s[i] * s[k - i];
            }
            s[k] = acc / (2.0 * s[0]);
        }
        Ok(Self { base: self.base, coeffs: s })
    }

    /// `g(self)` where `g` is expanded at `self.value()`. The result is a
    /// jet at `self.base`.
    pub fn compose_into(&self, g: &Jet) -> Self {
        assert_eq!(self.order(), g.order(), "jet orders must match");
        assert!(
            (g.base - self.coeffs[0]).abs() <= 1e-9 * self.coeffs[0].abs().max(1.0),
            "inner value must equal the outer expansion point"
        );
        // Horner on p = self - value (p has zero constant term).
        let mut p = self.clone();
        p.coeffs[0] = 0.0;
        let mut h = Jet::constant(self.base, g.coeffs[self.order()], self.order());
        for j in (0..self.order()).rev() {
            h = h.mul(&p);
            h.coeffs[0] += g.coeffs[j];
        }
        h
    }

    /// Antiderivative with the given value at the base point. Raises the
    /// order by one (an order-K derivative determines an order-K+1 jet).
    pub fn integrate(&self, value_at_base: f64) -> Self {
        let mut coeffs = vec![0.0; self.coeffs.len() + 1];
        coeffs[0] = value_at_base;
        for k in 1..coeffs.len() {
            coeffs[k] = self.coeffs[k - 1] / k as f64;
        }
        Self { base: self.base, coeffs }
    }

    /// Drop coefficients beyond `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        Self { base: self.base, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_of_variable_at_zero() {
        // exp of (0; 1, 0, 0) at order 3 -> (1, 1, 1/2, 1/6)
        let x = Jet::variable(0.0, 3);
        let e = x.exp();
        assert_relative_eq!(e.coeff(0), 1.0);
        assert_relative_eq!(e.coeff(1), 1.0);
        assert_relative_eq!(e.coeff(2), 0.5);
        assert_relative_eq!(e.coeff(3), 1.0 / 6.0);
    }

    #[test]
    fn reciprocal_near_one() {
        // reciprocal of (1; 1) at order 1 -> (1, -1)
        let f = Jet::variable(1.0, 1);
        let r = f.recip().unwrap();
        assert_relative_eq!(r.coeff(0), 1.0);
        assert_relative_eq!(r.coeff(1), -1.0);
    }

    #[test]
    fn log_composed_with_shifted_variable() {
        // log of (1; 1, 0) at order 2 -> (0, 1, -1/2)
        let f = Jet::variable(1.0, 2);
        let l = f.log().unwrap();
        assert_relative_eq!(l.coeff(0), 0.0);
        assert_relative_eq!(l.coeff(1), 1.0);
        assert_relative_eq!(l.coeff(2), -0.5);
    }

    #[test]
    fn division_by_zero_constant_is_an_error() {
        let zero = Jet::constant(0.0, 0.0, 2);
        let one = Jet::constant(0.0, 1.0, 2);
        assert_eq!(one.div(&zero), Err(JetError::DivisionByZeroConstant));
        assert_eq!(zero.log(), Err(JetError::LogNonPositive));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = Jet::from_coeffs(2.0, vec![3.0, 0.5, -0.25, 0.125]);
        let back = f.log().unwrap().exp();
        for k in 0..=3 {
            assert_relative_eq!(back.coeff(k), f.coeff(k), epsilon = 1e-14);
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let f = Jet::from_coeffs(1.5, vec![4.0, 1.0, 0.25, -0.5]);
        let s = f.sqrt().unwrap();
        let sq = s.mul(&s);
        for k in 0..=3 {
            assert_relative_eq!(sq.coeff(k), f.coeff(k), epsilon = 1e-14);
        }
    }

    #[test]
    fn compose_matches_direct() {
        // exp(1/t) at t0 = 2 via composition vs direct recurrences.
        let t = Jet::variable(2.0, 5);
        let inner = t.recip().unwrap();
        let outer = Jet::variable(inner.value(), 5).exp();
        let composed = inner.compose_into(&outer);
        let direct = inner.exp();
        for k in 0..=5 {
            assert_relative_eq!(composed.coeff(k), direct.coeff(k), epsilon = 1e-12);
        }
    }

    #[test]
    fn integrate_then_differentiate() {
        let f = Jet::from_coeffs(1.0, vec![2.0, -1.0, 3.0]);
        let int = f.integrate(7.0);
        assert_relative_eq!(int.coeff(0), 7.0);
        assert_relative_eq!(int.coeff(1), 2.0);
        assert_relative_eq!(int.coeff(2), -0.5);
        assert_relative_eq!(int.coeff(3), 1.0);
    }
}
