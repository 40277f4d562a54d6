//! Orthogonal matrices, exact and floating point.
//!
//! Rational matrices are built from Pythagorean-triple Givens rotations, so
//! `A^T A = I` holds exactly and invariance checks can demand exact symbolic
//! equality instead of tolerances. Floating-point matrices come from
//! orthonormalizing a random square matrix with a seeded generator.

use num::traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OrthogonalityError {
    #[error("matrix is not orthogonal (A^T A != I exactly)")]
    NotExactlyOrthogonal,
    #[error("matrix orthogonality residual exceeds tolerance")]
    ResidualTooLarge,
}

/// Exactly orthogonal matrix with rational entries; `entry(j, i)` is
/// `a_{j,i}` in `y = A x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalOrthogonal {
    rows: Vec<Vec<Rational>>,
}

/// Hypotenuse-scaled legs of a few primitive Pythagorean triples; each gives
/// an exact rotation angle.
const TRIPLES: &[(i64, i64, i64)] = &[
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (9, 40, 41),
    (12, 35, 37),
    (28, 45, 53),
    (11, 60, 61),
    (33, 56, 65),
];

impl RationalOrthogonal {
    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, OrthogonalityError> {
        let m = Self { rows };
        if m.is_orthogonal() {
            Ok(m)
        } else {
            Err(OrthogonalityError::NotExactlyOrthogonal)
        }
    }

    /// Exact Givens rotation in the `(p, q)` plane with cosine `a/h`,
    /// sine `b/h` from a Pythagorean triple.
    pub fn givens(dim: usize, p: usize, q: usize, triple: (i64, i64, i64)) -> Self {
        assert!(p < q && q < dim);
        let (a, b, h) = triple;
        debug_assert_eq!(a * a + b * b, h * h);
        let mut m = Self::identity(dim);
        m.rows[p][p] = rat(a, h);
        m.rows[p][q] = rat(b, h);
        m.rows[q][p] = rat(-b, h);
        m.rows[q][q] = rat(a, h);
        m
    }

    /// Random composition of exact Givens rotations over random planes,
    /// with a random axis reflection so both components of O(N) appear.
    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        let mut m = Self::identity(dim);
        if dim == 1 {
            if rng.random_bool(0.5) {
                m.rows[0][0] = -m.rows[0][0].clone();
            }
            return m;
        }
        let rotations = dim * (dim - 1) / 2 + 2;
        for _ in 0..rotations {
            let p = rng.random_range(0..dim - 1);
            let q = rng.random_range(p + 1..dim);
            let mut triple = TRIPLES[rng.random_range(0..TRIPLES.len())];
            if rng.random_bool(0.5) {
                triple = (triple.1, triple.0, triple.2);
            }
            if rng.random_bool(0.5) {
                triple = (triple.0, -triple.1, triple.2);
            }
            m = m.compose(&Self::givens(dim, p, q, triple));
        }
        if rng.random_bool(0.5) {
            let axis = rng.random_range(0..dim);
            for e in &mut m.rows[axis] {
                *e = -e.clone();
            }
        }
        debug_assert!(m.is_orthogonal());
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, j: usize, i: usize) -> &Rational {
        &self.rows[j][i]
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let rows = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|k| &self.rows[j][k] * &other.rows[k][i])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// `A^T A = I`, exactly.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for k in i..n {
                let dot: Rational = (0..n).map(|j| &self.rows[j][i] * &self.rows[j][k]).sum();
                let want = if i == k { Rational::one() } else { Rational::zero() };
                if dot != want {
                    return false;
                }
            }
        }
        true
    }

    /// `y = A x` on an exact point.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim());
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, v)| a * v).sum())
            .collect()
    }

    pub fn to_float(&self) -> FloatOrthogonal {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(crate::rational::to_f64).collect())
            .collect();
        FloatOrthogonal { rows }
    }
}

/// Floating-point orthogonal matrix with `max |A^T A - I| <= 1e-12`.
#[derive(Debug, Clone)]
pub struct FloatOrthogonal {
    rows: Vec<Vec<f64>>,
}

/// Standard normal sample via Box-Muller.
fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}

impl FloatOrthogonal {
    /// Orthonormalize a random Gaussian matrix (modified Gram-Schmidt,
    /// two passes).
    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        loop {
            let mut cols: Vec<Vec<f64>> = (0..dim)
                .map(|_| (0..dim).map(|_| gaussian(rng)).collect())
                .collect();
            let mut ok = true;
            for i in 0..dim {
                for _pass in 0..2 {
                    for k in 0..i {
                        let proj: f64 = (0..dim).map(|r| cols[i][r] * cols[k][r]).sum();
                        for r in 0..dim {
                            cols[i][r] -= proj * cols[k][r];
                        }
                    }
                }
                let norm: f64 = (0..dim).map(|r| cols[i][r] * cols[i][r]).sum::<f64>().sqrt();
                if norm < 1e-6 {
                    ok = false;
                    break;
                }
                for r in 0..dim {
                    cols[i][r] /= norm;
                }
            }
            if !ok {
                continue;
            }
            let rows = (0..dim)
                .map(|j| (0..dim).map(|i| cols[i][j]).collect())
                .collect();
            let m = Self { rows };
            if m.residual() <= 1e-13 {
                return m;
            }
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, tol: f64) -> Result<Self, OrthogonalityError> {
        let m = Self { rows };
        if m.residual() <= tol {
            Ok(m)
        } else {
            Err(OrthogonalityError::ResidualTooLarge)
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, j: usize, i: usize) -> f64 {
        self.rows[j][i]
    }

    /// `max_ik |(A^T A - I)_{ik}|`.
    pub fn residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for k in 0..n {
                let dot: f64 = (0..n).map(|j| self.rows[j][i] * self.rows[j][k]).sum();
                let want = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim());
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, v)| a * v).sum())
            .collect()
    }
}
