//! Universal chain-rule polynomials for radial functions.
//!
//! For radial `u` viewed as a function of `s = |x|^2 / 2`, every mixed
//! partial expands as
//!
//! ```text
//!   d^m u / dx^alpha = sum_{i=0}^{floor(m/2)} u^(m-i)(s) * P^(alpha)_{m-2i}(x)
//! ```
//!
//! where each nonzero `P^(alpha)_{m-2i}` is homogeneous of degree `m-2i`
//! with positive integer coefficients. The table is built by the induction
//! `d/dx_j: u^(m-i) P -> u^(m+1-i) x_j P + u^(m-i) dP/dx_j` from the base
//! case `P^(e_j)_1 = x_j`, and turns an s-jet of a profile into the full
//! derivative tensor at a point.

use std::collections::BTreeMap;

use crate::multi_index::MultiIndex;
use crate::poly::MultivariatePolynomial as Poly;
use crate::radial::RadialSymbolicExpr;
use crate::tensor::DerivativeTensor;

#[derive(Debug, Clone, PartialEq)]
pub struct ChainRuleTable {
    dim: usize,
    order: u32,
    /// For each multi-index `alpha` with `|alpha| = order`, the list
    /// `[P_m, P_{m-2}, ...]` indexed by `i = 0..floor(m/2)`.
    table: BTreeMap<MultiIndex, Vec<Poly>>,
}

impl ChainRuleTable {
    pub fn new(dim: usize, order: u32) -> Self {
        assert!(dim >= 1 && order >= 1);
        // Base case m = 1: d u/dx_j = u'(s) x_j.
        let mut table: BTreeMap<MultiIndex, Vec<Poly>> = (0..dim)
            .map(|j| {
                (
                    MultiIndex::empty(dim).with_axis_added(j),
                    vec![Poly::variable(dim, j)],
                )
            })
            .collect();
        for m in 1..order {
            let mut next = BTreeMap::new();
            for key in MultiIndex::enumerate(dim, m + 1) {
                let j = key.first_axis().expect("order >= 1");
                let parent = &table[&key.with_axis_removed(j)];
                let xj = Poly::variable(dim, j);
                let len = (m as usize).div_ceil(2) + 1;
                let mut polys = Vec::with_capacity(len);
                for i in 0..len {
                    let mut p = Poly::zero(dim);
                    if i < parent.len() {
                        p = p.add(&xj.mul(&parent[i]));
                    }
                    if i >= 1 && i - 1 < parent.len() {
                        p = p.add(&parent[i - 1].derivative(j));
                    }
                    polys.push(p);
                }
                next.insert(key, polys);
            }
            table = next;
        }
        Self { dim, order, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The polynomials `[P^(alpha)_m, P^(alpha)_{m-2}, ...]` for a key.
    pub fn polynomials(&self, key: &MultiIndex) -> &[Poly] {
        &self.table[key]
    }

    pub fn keys(&self) -> impl Iterator<Item = &MultiIndex> {
        self.table.keys()
    }

    /// Assemble the order-m derivative tensor at a point from the values
    /// `s_derivs[d] = u^(d)(s)` with `s = |x|^2/2` (needs `d <= m`).
    pub fn assemble_at(&self, s_derivs: &[f64], x: &[f64]) -> DerivativeTensor<f64> {
        assert!(s_derivs.len() > self.order as usize);
        assert_eq!(x.len(), self.dim);
        let m = self.order as usize;
        let entries = self
            .table
            .iter()
            .map(|(key, polys)| {
                let mut v = 0.0;
                for (i, p) in polys.iter().enumerate() {
                    if !p.is_zero() {
                        v += s_derivs[m - i] * p.eval_f64(x);
                    }
                }
                (key.clone(), v)
            })
            .collect();
        DerivativeTensor::from_entries(self.dim, self.order, entries)
    }

    /// Assemble the tensor symbolically from exact s-derivative expressions
    /// (`s_derivs[d]` is `u^(d)` written in `x`, e.g. a polynomial in
    /// `|x|^2`). Used to cross-validate against direct differentiation.
    pub fn assemble_symbolic(
        &self,
        s_derivs: &[RadialSymbolicExpr],
    ) -> DerivativeTensor<RadialSymbolicExpr> {
        assert!(s_derivs.len() > self.order as usize);
        let m = self.order as usize;
        let entries = self
            .table
            .iter()
            .map(|(key, polys)| {
                let mut acc = RadialSymbolicExpr::zero(self.dim);
                for (i, p) in polys.iter().enumerate() {
                    if !p.is_zero() {
                        acc = acc.add(&s_derivs[m - i].mul(&RadialSymbolicExpr::from_poly(p.clone())));
                    }
                }
                (key.clone(), acc)
            })
            .collect();
        DerivativeTensor::from_entries(self.dim, self.order, entries)
    }
}

/// Exact s-derivatives of an expression in the symbolic class, for use with
/// [`ChainRuleTable::assemble_symbolic`]: `d/ds = (1/|x|) d/d|x|` acting on
/// radial expressions; here computed directly as `du/ds = sum_i (x_i/|x|^2) du/dx_i`
/// restricted to radial inputs.
pub fn radial_s_derivatives(u: &RadialSymbolicExpr, count: usize) -> Vec<RadialSymbolicExpr> {
    let dim = u.dim();
    let mut out = vec![u.clone()];
    for d in 1..count {
        let prev = &out[d - 1];
        // For radial v, dv/ds = (x . grad v) / |x|^2.
        let mut dot = RadialSymbolicExpr::zero(dim);
        for i in 0..dim {
            let xi = RadialSymbolicExpr::from_poly(Poly::variable(dim, i));
            dot = dot.add(&xi.mul(&prev.differentiate(i)));
        }
        out.push(dot.mul_radius_power(-2));
    }
    out
}
