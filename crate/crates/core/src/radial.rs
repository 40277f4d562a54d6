//! Symbolic expressions of the form `sum_j P_j(x) |x|^j` on `R^N \ {0}`,
//! closed under partial differentiation.
//!
//! Internally every expression is kept in a two-part normal form split by
//! radius-power parity:
//!
//! ```text
//!   A(x) |x|^(-2K)  +  B(x) |x|^(1-2L),      K, L >= 0
//! ```
//!
//! with `A` (resp. `B`) not divisible by `|x|^2` unless `K = 0` (resp.
//! `L = 0`). Positive even radius powers are folded into the polynomials via
//! `|x|^2 = x_1^2 + ... + x_N^2`. The normal form is unique, which makes
//! equality and the zero test exact: the expression vanishes identically on
//! `R^N \ {0}` iff both polynomial parts are zero.

use std::fmt;

use num::traits::{Pow, Zero};
use thiserror::Error;

use crate::poly::MultivariatePolynomial as Poly;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialSymbolicExpr {
    dim: usize,
    /// Even-parity part: `even * |x|^(-2 even_pow)`.
    even: Poly,
    even_pow: u32,
    /// Odd-parity part: `odd * |x|^(1 - 2 odd_pow)`.
    odd: Poly,
    odd_pow: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("evaluation at the origin is undefined")]
    ZeroPoint,
    #[error("the zero expression has no homogeneity degree")]
    ZeroExpression,
}

/// Outcome of the homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(i64),
    NotHomogeneous,
}

/// Exact value of an expression at a rational point, split as
/// `even + odd * sqrt(radius_sq)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue {
    pub even: Rational,
    pub odd: Rational,
    pub radius_sq: Rational,
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.even) + to_f64(&self.odd) * to_f64(&self.radius_sq).sqrt()
    }
}

impl RadialSymbolicExpr {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            even: Poly::zero(dim),
            even_pow: 0,
            odd: Poly::zero(dim),
            odd_pow: 0,
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let dim = p.dim();
        Self::from_parts(dim, p, 0, Poly::zero(dim), 0)
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(dim, c))
    }

    /// `p * |x|^j` for any integer `j` (any sign, any parity).
    pub fn from_term(p: Poly, j: i64) -> Self {
        let dim = p.dim();
        let r2 = Poly::radius_sq(dim);
        if j.rem_euclid(2) == 0 {
            // p |x|^(2t): fold t >= 0 into the polynomial, keep t < 0 below.
            let t = j / 2;
            if t >= 0 {
                Self::from_parts(dim, p.mul(&r2.pow(t as u32)), 0, Poly::zero(dim), 0)
            } else {
                Self::from_parts(dim, p, (-t) as u32, Poly::zero(dim), 0)
            }
        } else {
            // p |x|^(1-2l)
            let l = (1 - j) / 2;
            if l >= 0 {
                Self::from_parts(dim, Poly::zero(dim), 0, p, l as u32)
            } else {
                Self::from_parts(dim, Poly::zero(dim), 0, p.mul(&r2.pow((-l) as u32)), 0)
            }
        }
    }

    /// `|x|^j`.
    pub fn radius_power(dim: usize, j: i64) -> Self {
        Self::from_term(Poly::one(dim), j)
    }

    /// Build from arbitrary `(j, P_j)` terms denoting `sum_j P_j |x|^j`.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (i64, Poly)>) -> Self {
        let mut out = Self::zero(dim);
        for (j, p) in terms {
            out = out.add(&Self::from_term(p, j));
        }
        out
    }

    /// Normalize a raw four-tuple into canonical form.
    fn from_parts(dim: usize, even: Poly, even_pow: u32, odd: Poly, odd_pow: u32) -> Self {
        let r2 = Poly::radius_sq(dim);
        let (mut even, mut even_pow) = (even, even_pow);
        if even.is_zero() {
            even_pow = 0;
        } else {
            while even_pow > 0 {
                match even.div_exact(&r2) {
                    Some(q) => {
                        even = q;
                        even_pow -= 1;
                    }
                    None => break,
                }
            }
        }
        let (mut odd, mut odd_pow) = (odd, odd_pow);
        if odd.is_zero() {
            odd_pow = 0;
        } else {
            while odd_pow > 0 {
                match odd.div_exact(&r2) {
                    Some(q) => {
                        odd = q;
                        odd_pow -= 1;
                    }
                    None => break,
                }
            }
        }
        Self { dim, even, even_pow, odd, odd_pow }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Canonical even part `(A, K)` meaning `A |x|^(-2K)`.
    pub fn even_part(&self) -> (&Poly, u32) {
        (&self.even, self.even_pow)
    }

    /// Canonical odd part `(B, L)` meaning `B |x|^(1-2L)`.
    pub fn odd_part(&self) -> (&Poly, u32) {
        (&self.odd, self.odd_pow)
    }

    /// View as `(radius power, polynomial)` pairs; at most two entries.
    pub fn terms(&self) -> Vec<(i64, Poly)> {
        let mut v = Vec::new();
        if !self.even.is_zero() {
            v.push((-2 * self.even_pow as i64, self.even.clone()));
        }
        if !self.odd.is_zero() {
            v.push((1 - 2 * self.odd_pow as i64, self.odd.clone()));
        }
        v
    }

    /// `Some(c)` iff the expression is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.odd.is_zero() || self.even_pow != 0 {
            return None;
        }
        self.even.as_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let r2 = Poly::radius_sq(self.dim);
        let ek = self.even_pow.max(other.even_pow);
        let even = self
            .even
            .mul(&r2.pow(ek - self.even_pow))
            .add(&other.even.mul(&r2.pow(ek - other.even_pow)));
        let ol = self.odd_pow.max(other.odd_pow);
        let odd = self
            .odd
            .mul(&r2.pow(ol - self.odd_pow))
            .add(&other.odd.mul(&r2.pow(ol - other.odd_pow)));
        Self::from_parts(self.dim, even, ek, odd, ol)
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            even: self.even.neg(),
            even_pow: self.even_pow,
            odd: self.odd.neg(),
            odd_pow: self.odd_pow,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let r2 = Poly::radius_sq(self.dim);
        // even*even and odd*odd (the latter picks up one |x|^2) are even;
        // the cross terms are odd. Everything is brought to the common
        // powers K1+K2+L1+L2 with compensating |x|^2 factors.
        let common = self.even_pow + other.even_pow + self.odd_pow + other.odd_pow;
        let even = self
            .even
            .mul(&other.even)
            .mul(&r2.pow(self.odd_pow + other.odd_pow))
            .add(
                &self
                    .odd
                    .mul(&other.odd)
                    .mul(&r2.pow(1 + self.even_pow + other.even_pow)),
            );
        let odd = self
            .even
            .mul(&other.odd)
            .mul(&r2.pow(other.even_pow + self.odd_pow))
            .add(
                &self
                    .odd
                    .mul(&other.even)
                    .mul(&r2.pow(self.even_pow + other.odd_pow)),
            );
        Self::from_parts(self.dim, even, common, odd, common)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            even: self.even.scale(c),
            even_pow: self.even_pow,
            odd: self.odd.scale(c),
            odd_pow: self.odd_pow,
        }
    }

    /// Multiply by `|x|^j`.
    pub fn mul_radius_power(&self, j: i64) -> Self {
        if self.is_zero() || j == 0 {
            return self.clone();
        }
        let mut out = Self::zero(self.dim);
        if !self.even.is_zero() {
            out = out.add(&Self::from_term(
                self.even.clone(),
                j - 2 * self.even_pow as i64,
            ));
        }
        if !self.odd.is_zero() {
            out = out.add(&Self::from_term(
                self.odd.clone(),
                j + 1 - 2 * self.odd_pow as i64,
            ));
        }
        out
    }

    /// Exact partial derivative along axis `i` (zero-based), valid on
    /// `R^N \ {0}`. Uses `d/dx_i |x|^j = j x_i |x|^(j-2)` termwise.
    pub fn differentiate(&self, i: usize) -> Self {
        assert!(i < self.dim);
        let xi = Poly::variable(self.dim, i);
        let r2 = Poly::radius_sq(self.dim);
        // d(A |x|^(-2K)) = (dA r^2 - 2K A x_i) |x|^(-2(K+1))
        let even = self
            .even
            .derivative(i)
            .mul(&r2)
            .add(&self.even.mul(&xi).scale(&Rational::from_integer(
                (-2 * self.even_pow as i64).into(),
            )));
        // d(B |x|^(1-2L)) = (dB r^2 + (1-2L) B x_i) |x|^(1-2(L+1))
        let odd = self
            .odd
            .derivative(i)
            .mul(&r2)
            .add(&self.odd.mul(&xi).scale(&Rational::from_integer(
                (1 - 2 * self.odd_pow as i64).into(),
            )));
        Self::from_parts(self.dim, even, self.even_pow + 1, odd, self.odd_pow + 1)
    }

    /// Re-normalize. Expressions are always kept canonical, so this is the
    /// identity; it exists so callers can assert the zero flag explicitly.
    pub fn canonicalize(&self) -> (Self, bool) {
        let c = Self::from_parts(
            self.dim,
            self.even.clone(),
            self.even_pow,
            self.odd.clone(),
            self.odd_pow,
        );
        let z = c.is_zero();
        (c, z)
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<ExactValue, ExactError> {
        assert_eq!(point.len(), self.dim);
        let radius_sq: Rational = point.iter().map(|p| p * p).sum();
        if radius_sq.is_zero() {
            return Err(ExactError::ZeroPoint);
        }
        let even = self.even.eval(point) * radius_sq.clone().pow(-(self.even_pow as i32));
        let odd = self.odd.eval(point) * radius_sq.clone().pow(-(self.odd_pow as i32));
        Ok(ExactValue { even, odd, radius_sq })
    }

    /// Floating-point evaluation at a nonzero point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim);
        let r2: f64 = point.iter().map(|p| p * p).sum();
        let even = self.even.eval_f64(point) * r2.powi(-(self.even_pow as i32));
        let odd = self.odd.eval_f64(point) * r2.powi(-(self.odd_pow as i32));
        even + odd * r2.sqrt()
    }

    /// Degree `d` with `expr(t x) = t^d expr(x)` for `t > 0`, if it exists.
    pub fn homogeneity_degree(&self) -> Result<Homogeneity, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroExpression);
        }
        let mut deg: Option<i64> = None;
        if !self.even.is_zero() {
            match self.even.homogeneous_degree() {
                Some(d) => deg = Some(d as i64 - 2 * self.even_pow as i64),
                None => return Ok(Homogeneity::NotHomogeneous),
            }
        }
        if !self.odd.is_zero() {
            match self.odd.homogeneous_degree() {
                Some(d) => {
                    let od = d as i64 + 1 - 2 * self.odd_pow as i64;
                    if let Some(ed) = deg {
                        if ed != od {
                            return Ok(Homogeneity::NotHomogeneous);
                        }
                    }
                    deg = Some(od);
                }
                None => return Ok(Homogeneity::NotHomogeneous),
            }
        }
        Ok(Homogeneity::Degree(deg.expect("nonzero expression")))
    }

    /// Substitute `x <- M x` for an exactly orthogonal `M` (so `|Mx| = |x|`
    /// and radius powers are unchanged).
    pub fn compose_orthogonal(&self, m: &[Vec<Rational>]) -> Self {
        Self::from_parts(
            self.dim,
            self.even.compose_linear(m),
            self.even_pow,
            self.odd.compose_linear(m),
            self.odd_pow,
        )
    }
}

impl fmt::Display for RadialSymbolicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (j, p) in self.terms() {
            if j == 0 {
                parts.push(format!("{p}"));
            } else {
                parts.push(format!("({p})*|x|^{j}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}
