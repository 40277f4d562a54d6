//! Exact multivariate polynomials with rational coefficients.
//!
//! Exponent vectors are stored densely per dimension (desk scale, N <= 8).
//! No zero coefficients are ever kept, so `terms.is_empty()` is the zero
//! test. The map is ordered, which keeps every iteration deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultivariatePolynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// The coordinate polynomial `x_i` (zero-based axis).
    pub fn variable(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut exps = vec![0; dim];
        exps[i] = 1;
        let mut p = Self::zero(dim);
        p.add_term(exps, Rational::one());
        p
    }

    pub fn monomial(dim: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), dim);
        let mut p = Self::zero(dim);
        p.add_term(exps, c);
        p
    }

    /// `|x|^2 = x_1^2 + ... + x_N^2`.
    pub fn radius_sq(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for i in 0..dim {
            let mut exps = vec![0; dim];
            exps[i] = 2;
            p.add_term(exps, Rational::one());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                exps.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.dim);
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative along axis `i` (zero-based).
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.dim);
        let mut out = Self::zero(self.dim);
        for (exps, c) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[i] -= 1;
            out.add_term(e, c * Rational::from_integer(exps[i].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut sum = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (p, &e) in point.iter().zip(exps) {
                if e > 0 {
                    term *= p.clone().pow(e as i32);
                }
            }
            sum += term;
        }
        sum
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim);
        let mut sum = 0.0;
        for (exps, c) in &self.terms {
            let mut term = to_f64(c);
            for (p, &e) in point.iter().zip(exps) {
                if e > 0 {
                    term *= p.powi(e as i32);
                }
            }
            sum += term;
        }
        sum
    }

    /// Substitute `x_i <- sum_k m[i][k] x_k` (linear change of variables).
    pub fn compose_linear(&self, m: &[Vec<Rational>]) -> Self {
        assert_eq!(m.len(), self.dim);
        let forms: Vec<Self> = (0..self.dim)
            .map(|i| {
                assert_eq!(m[i].len(), self.dim);
                let mut f = Self::zero(self.dim);
                for (k, c) in m[i].iter().enumerate() {
                    f = f.add(&Self::variable(self.dim, k).scale(c));
                }
                f
            })
            .collect();

        let max_pow: Vec<u32> = (0..self.dim)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        // powers[i][e] = forms[i]^e
        let powers: Vec<Vec<Self>> = forms
            .iter()
            .zip(&max_pow)
            .map(|(f, &mp)| {
                let mut v = vec![Self::one(self.dim)];
                for e in 1..=mp {
                    v.push(v[(e - 1) as usize].mul(f));
                }
                v
            })
            .collect();

        let mut out = Self::zero(self.dim);
        for (exps, c) in &self.terms {
            let mut term = Self::constant(self.dim, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Total degree of each monomial if they all agree, else `None`.
    /// Returns `None` for the zero polynomial as well.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for exps in self.terms.keys() {
            let d: u32 = exps.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, or `None` if the
    /// division leaves a remainder. Single-divisor reduction in lex order.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.dim, divisor.dim);
        assert!(!divisor.is_zero());
        let (lead_exps, lead_coeff) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.dim);
        while let Some((exps, coeff)) = rem.terms.iter().next_back() {
            if exps.iter().zip(lead_exps).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = exps.iter().zip(lead_exps).map(|(a, b)| a - b).collect();
            let qc = coeff / lead_coeff;
            let qterm = Self::monomial(self.dim, qe, qc);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// True when every coefficient is a non-negative integer.
    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest monomial first reads more naturally.
        for (exps, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = exps.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                write!(f, "{sep}x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

// Small arithmetic helpers used across the crate.

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut num = num::BigInt::one();
    let mut den = num::BigInt::one();
    for j in 0..k.min(n - k) {
        num *= n - j;
        den *= j + 1;
    }
    Rational::new(num, den)
}

pub fn factorial(n: u64) -> num::BigInt {
    let mut out = num::BigInt::one();
    for j in 2..=n {
        out *= j;
    }
    out
}

/// Multinomial coefficient `(sum k_i)! / prod k_i!` as u64 (desk scale).
pub fn multinomial(counts: &[u32]) -> u64 {
    let m: u32 = counts.iter().sum();
    let mut v = factorial(m as u64);
    for &k in counts {
        v /= factorial(k as u64);
    }
    v.to_u64().expect("multinomial fits u64 at desk scale")
}
