//! Symmetric derivative tensors and the symbolic certificates built on them.
//!
//! An order-m tensor stores one entry per sorted multi-index; symmetry of
//! mixed partials makes the `m!/(k_1!...k_N!)` permutations of a key equal,
//! so norms and contractions weight each entry by its multiplicity.

use std::collections::BTreeMap;

use num::traits::Zero;
use thiserror::Error;

use crate::multi_index::MultiIndex;
use crate::orthogonal::{FloatOrthogonal, RationalOrthogonal};
use crate::poly::MultivariatePolynomial as Poly;
use crate::radial::RadialSymbolicExpr;
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("tensor shapes differ: ({0}, order {1}) vs ({2}, order {3})")]
    ShapeMismatch(usize, u32, usize, u32),
    #[error("matrix dimension {0} does not match tensor dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected a constant, got `{0}`")]
    NotConstant(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTensor<E> {
    dim: usize,
    order: u32,
    entries: BTreeMap<MultiIndex, E>,
}

impl<E> DerivativeTensor<E> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &E)> {
        self.entries.iter()
    }

    pub fn entry(&self, key: &MultiIndex) -> &E {
        &self.entries[key]
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn from_entries(dim: usize, order: u32, entries: BTreeMap<MultiIndex, E>) -> Self {
        debug_assert!(entries.keys().all(|k| k.dim() == dim && k.order() == order));
        Self { dim, order, entries }
    }

    fn same_shape<F>(&self, other: &DerivativeTensor<F>) -> Result<(), TensorError> {
        if self.dim != other.dim || self.order != other.order {
            return Err(TensorError::ShapeMismatch(
                self.dim, self.order, other.dim, other.order,
            ));
        }
        Ok(())
    }
}

impl DerivativeTensor<RadialSymbolicExpr> {
    /// Order-1 tensor from explicit gradient components.
    pub fn from_gradient(components: Vec<RadialSymbolicExpr>) -> Self {
        let dim = components.len();
        let entries = components
            .into_iter()
            .enumerate()
            .map(|(i, e)| (MultiIndex::empty(dim).with_axis_added(i), e))
            .collect();
        Self { dim, order: 1, entries }
    }

    /// The gradient of `log |x|`: components `x_i |x|^(-2)`. The logarithm
    /// itself lives outside the symbolic class, so every higher tensor of it
    /// is seeded here.
    pub fn log_gradient(dim: usize) -> Self {
        Self::from_gradient(
            (0..dim)
                .map(|i| RadialSymbolicExpr::from_term(Poly::variable(dim, i), -2))
                .collect(),
        )
    }

    /// `grad^m log |x|` as an order-m tensor of exact expressions.
    pub fn log_derivative_tensor(dim: usize, order: u32) -> Self {
        assert!(order >= 1);
        let mut t = Self::log_gradient(dim);
        for _ in 1..order {
            t = t.differentiate_once();
        }
        t
    }

    /// Order-m tensor of mixed partials of an expression in the class.
    pub fn of_expression(u: &RadialSymbolicExpr, order: u32) -> Self {
        assert!(order >= 1);
        let dim = u.dim();
        let mut t = Self::from_gradient((0..dim).map(|i| u.differentiate(i)).collect());
        for _ in 1..order {
            t = t.differentiate_once();
        }
        t
    }

    /// Raise the order by one: the entry at a sorted key is the derivative
    /// of the parent entry along the key's first axis (any axis would do, by
    /// commutativity of the exact derivatives).
    pub fn differentiate_once(&self) -> Self {
        let order = self.order + 1;
        let entries = MultiIndex::enumerate(self.dim, order)
            .into_iter()
            .map(|key| {
                let axis = key.first_axis().expect("order >= 1");
                let parent = key.with_axis_removed(axis);
                let e = self.entries[&parent].differentiate(axis);
                (key, e)
            })
            .collect();
        Self { dim: self.dim, order, entries }
    }

    /// `sum over all N^m index tuples of entry^2`, via multiplicities.
    pub fn frobenius_norm_sq(&self) -> RadialSymbolicExpr {
        let mut acc = RadialSymbolicExpr::zero(self.dim);
        for (key, e) in &self.entries {
            let sq = e.mul(e).scale(&rat(key.multiplicity() as i64, 1));
            acc = acc.add(&sq);
        }
        acc
    }

    /// Full contraction `sum over all index tuples of entry * entry`.
    pub fn contract(&self, other: &Self) -> Result<RadialSymbolicExpr, TensorError> {
        self.same_shape(other)?;
        let mut acc = RadialSymbolicExpr::zero(self.dim);
        for (key, e) in &self.entries {
            let prod = e
                .mul(&other.entries[key])
                .scale(&rat(key.multiplicity() as i64, 1));
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    /// The tensor of mixed partials of `u_A(x) = u(Ax)` expressed through
    /// those of `u`: entry `(i_1..i_m)` is
    /// `sum_{j_1..j_m} a_{j_1,i_1} ... a_{j_m,i_m} (d^m u)_{j_1..j_m}(Ax)`.
    /// Exact for exactly orthogonal rational `A`.
    pub fn orthogonal_transform(
        &self,
        a: &RationalOrthogonal,
    ) -> Result<Self, TensorError> {
        if a.dim() != self.dim {
            return Err(TensorError::DimensionMismatch(a.dim(), self.dim));
        }
        // Entries of d^m u evaluated at y = Ax, as functions of x.
        let composed: BTreeMap<&MultiIndex, RadialSymbolicExpr> = self
            .entries
            .iter()
            .map(|(k, e)| (k, e.compose_orthogonal(a.rows())))
            .collect();

        let m = self.order as usize;
        let keys = MultiIndex::enumerate(self.dim, self.order);
        let mut entries = BTreeMap::new();
        for target in keys {
            let ivec = target.axes();
            // Accumulate the product-of-matrix-entries coefficient per
            // source key, then combine the composed entries once.
            let mut coeffs: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
            let mut jtuple = vec![0usize; m];
            loop {
                let mut c = Rational::from_integer(1.into());
                for (s, &i_s) in ivec.iter().enumerate() {
                    c *= a.entry(jtuple[s], i_s).clone();
                }
                if !c.is_zero() {
                    let mut counts = vec![0u32; self.dim];
                    for &j in &jtuple {
                        counts[j] += 1;
                    }
                    let key = MultiIndex::new(counts);
                    *coeffs.entry(key).or_insert_with(Rational::zero) += c;
                }
                // next tuple in {0..N}^m
                let mut pos = 0;
                loop {
                    if pos == m {
                        break;
                    }
                    jtuple[pos] += 1;
                    if jtuple[pos] < self.dim {
                        break;
                    }
                    jtuple[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
            }
            let mut e = RadialSymbolicExpr::zero(self.dim);
            for (key, c) in coeffs {
                e = e.add(&composed[&key].scale(&c));
            }
            entries.insert(target, e);
        }
        Ok(Self { dim: self.dim, order: self.order, entries })
    }

    /// Evaluate every entry at a floating-point point.
    pub fn eval_f64(&self, point: &[f64]) -> DerivativeTensor<f64> {
        let entries = self
            .entries
            .iter()
            .map(|(k, e)| (k.clone(), e.eval_f64(point)))
            .collect();
        DerivativeTensor { dim: self.dim, order: self.order, entries }
    }
}

impl DerivativeTensor<f64> {
    pub fn frobenius_norm_sq_f64(&self) -> f64 {
        self.entries
            .iter()
            .map(|(k, e)| k.multiplicity() as f64 * e * e)
            .sum()
    }

    pub fn contract_f64(&self, other: &Self) -> Result<f64, TensorError> {
        self.same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .map(|(k, e)| k.multiplicity() as f64 * e * other.entries[k])
            .sum())
    }

    /// Numeric counterpart of the orthogonal transformation rule: `self`
    /// holds the entries of `d^m u` at `y = Ax`; the result holds the
    /// entries of `d^m u_A` at `x`.
    pub fn orthogonal_transform_f64(
        &self,
        a: &FloatOrthogonal,
    ) -> Result<Self, TensorError> {
        if a.dim() != self.dim {
            return Err(TensorError::DimensionMismatch(a.dim(), self.dim));
        }
        let m = self.order as usize;
        let mut entries = BTreeMap::new();
        for target in MultiIndex::enumerate(self.dim, self.order) {
            let ivec = target.axes();
            let mut sum = 0.0;
            let mut jtuple = vec![0usize; m];
            loop {
                let mut c = 1.0;
                for (s, &i_s) in ivec.iter().enumerate() {
                    c *= a.entry(jtuple[s], i_s);
                }
                let mut counts = vec![0u32; self.dim];
                for &j in &jtuple {
                    counts[j] += 1;
                }
                sum += c * self.entries[&MultiIndex::new(counts)];
                let mut pos = 0;
                loop {
                    if pos == m {
                        break;
                    }
                    jtuple[pos] += 1;
                    if jtuple[pos] < self.dim {
                        break;
                    }
                    jtuple[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
            }
            entries.insert(target, sum);
        }
        Ok(Self { dim: self.dim, order: self.order, entries })
    }
}

/// The exact constant `l_N^m` with `|grad^m log|x|| = sqrt(l_N^m) / |x|^m`:
/// computes `|grad^m log|x||^2 * |x|^(2m)` symbolically and certifies that
/// the normal form is a constant.
pub fn ell_symbolic(dim: usize, order: u32) -> Result<Rational, TensorError> {
    assert!(dim >= 1 && order >= 1);
    let t = DerivativeTensor::log_derivative_tensor(dim, order);
    let norm_sq = t.frobenius_norm_sq().mul_radius_power(2 * order as i64);
    norm_sq
        .as_constant()
        .ok_or_else(|| TensorError::NotConstant(norm_sq.to_string()))
}

/// Applies the order-2N operator underlying the fundamental-solution
/// identity to `log |x|` away from the origin:
/// `(-1)^N sum d^N( |x|^N d^N log|x| )` over all N-fold index tuples.
/// The result canonicalizes to the zero expression.
pub fn operator_l_apply(dim: usize) -> RadialSymbolicExpr {
    assert!(dim >= 1);
    let order = dim as u32;
    let t = DerivativeTensor::log_derivative_tensor(dim, order);
    let mut acc = RadialSymbolicExpr::zero(dim);
    for (key, e) in t.entries() {
        let mut g = e.mul_radius_power(dim as i64);
        for axis in key.axes() {
            g = g.differentiate(axis);
        }
        acc = acc.add(&g.scale(&rat(key.multiplicity() as i64, 1)));
    }
    if dim % 2 == 1 {
        acc = acc.neg();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::Homogeneity;

    fn xvar(dim: usize, i: usize) -> Poly {
        Poly::variable(dim, i)
    }

    /// Hessian of `log |x|` built from the hand-derived closed form
    /// `H_ij = delta_ij |x|^-2 - 2 x_i x_j |x|^-4`, used as an oracle.
    fn log_hessian_oracle(dim: usize) -> DerivativeTensor<RadialSymbolicExpr> {
        let mut entries = BTreeMap::new();
        for key in MultiIndex::enumerate(dim, 2) {
            let axes = key.axes();
            let (i, j) = (axes[0], axes[1]);
            let mut e = RadialSymbolicExpr::from_term(
                xvar(dim, i).mul(&xvar(dim, j)).scale(&rat(-2, 1)),
                -4,
            );
            if i == j {
                e = e.add(&RadialSymbolicExpr::radius_power(dim, -2));
            }
            entries.insert(key, e);
        }
        DerivativeTensor::from_entries(dim, 2, entries)
    }

    #[test]
    fn log_gradient_entries() {
        let t = DerivativeTensor::log_gradient(2);
        assert_eq!(t.num_entries(), 2);
        let k = MultiIndex::new(vec![1, 0]);
        assert_eq!(t.entry(&k), &RadialSymbolicExpr::from_term(xvar(2, 0), -2));
    }

    #[test]
    fn log_hessian_matches_oracle() {
        for dim in 2..=4 {
            let t = DerivativeTensor::log_derivative_tensor(dim, 2);
            let oracle = log_hessian_oracle(dim);
            for (key, e) in t.entries() {
                assert_eq!(e, oracle.entry(key), "dim {dim}, key {key}");
            }
        }
    }

    #[test]
    fn key_count_and_multiplicity() {
        let t = DerivativeTensor::log_derivative_tensor(3, 3);
        assert_eq!(t.num_entries(), 10);
        let k = MultiIndex::new(vec![2, 1, 0]); // {1,1,2}
        assert_eq!(k.multiplicity(), 3);
        assert!(t.entries().any(|(key, _)| key == &k));
    }

    #[test]
    fn frobenius_of_gradient_is_inverse_radius_sq() {
        for dim in 1..=5 {
            let t = DerivativeTensor::log_gradient(dim);
            let n = t.frobenius_norm_sq();
            assert_eq!(n, RadialSymbolicExpr::radius_power(dim, -2), "dim {dim}");
        }
    }

    #[test]
    fn frobenius_of_hessian() {
        // |grad^2 log|x||^2 = N |x|^-4, via the oracle Hessian.
        for dim in 2..=5 {
            let n = log_hessian_oracle(dim).frobenius_norm_sq();
            let want = RadialSymbolicExpr::radius_power(dim, -4).scale(&rat(dim as i64, 1));
            assert_eq!(n, want, "dim {dim}");
        }
        // and the differentiated tensor agrees with the oracle's norm.
        let n2 = DerivativeTensor::log_derivative_tensor(2, 2).frobenius_norm_sq();
        assert_eq!(n2, RadialSymbolicExpr::radius_power(2, -4).scale(&rat(2, 1)));
    }

    #[test]
    fn contract_examples() {
        let dim = 3;
        // u = |x|^2 / 2 has gradient x_i and Hessian = identity.
        let half_r2 = RadialSymbolicExpr::from_poly(Poly::radius_sq(dim)).scale(&rat(1, 2));
        let grad_log = DerivativeTensor::log_gradient(dim);
        let grad_u = DerivativeTensor::of_expression(&half_r2, 1);
        let c = grad_log.contract(&grad_u).unwrap();
        assert_eq!(c, RadialSymbolicExpr::scalar(dim, rat(1, 1)));

        // contract(grad^2 log, grad^2 |x|^2/2) = laplacian(log) = (N-2)|x|^-2.
        let hess_log = DerivativeTensor::log_derivative_tensor(dim, 2);
        let hess_u = DerivativeTensor::of_expression(&half_r2, 2);
        let c2 = hess_log.contract(&hess_u).unwrap();
        // Oracle: laplacian of log|x| computed as an explicit sum.
        let mut lap = RadialSymbolicExpr::zero(dim);
        for i in 0..dim {
            lap = lap.add(
                &RadialSymbolicExpr::from_term(xvar(dim, i), -2).differentiate(i),
            );
        }
        assert_eq!(c2, lap);
        assert_eq!(
            c2,
            RadialSymbolicExpr::radius_power(dim, -2).scale(&rat(dim as i64 - 2, 1))
        );

        // contract(T, T) == frobenius_norm_sq(T)
        let t = DerivativeTensor::log_derivative_tensor(2, 3);
        assert_eq!(t.contract(&t).unwrap(), t.frobenius_norm_sq());
    }

    #[test]
    fn contract_shape_mismatch() {
        let a = DerivativeTensor::log_derivative_tensor(2, 2);
        let b = DerivativeTensor::log_derivative_tensor(2, 3);
        assert!(matches!(
            a.contract(&b),
            Err(TensorError::ShapeMismatch(..))
        ));
    }

    #[test]
    fn log_tensor_components_homogeneous() {
        for dim in 2..=4usize {
            for order in 1..=4u32 {
                let t = DerivativeTensor::log_derivative_tensor(dim, order);
                for (key, e) in t.entries() {
                    assert_eq!(
                        e.homogeneity_degree().unwrap(),
                        Homogeneity::Degree(-(order as i64)),
                        "dim {dim} order {order} key {key}"
                    );
                }
            }
        }
    }

    #[test]
    fn transform_by_identity_is_identity() {
        let t = DerivativeTensor::log_derivative_tensor(2, 2);
        let id = RationalOrthogonal::identity(2);
        assert_eq!(t.orthogonal_transform(&id).unwrap(), t);
    }

    #[test]
    fn transform_gradient_of_coordinate() {
        // u = x1, A = ((3/5, 4/5), (-4/5, 3/5)): gradient of u_A is (3/5, 4/5).
        let u = RadialSymbolicExpr::from_poly(xvar(2, 0));
        let t = DerivativeTensor::of_expression(&u, 1);
        let a = RationalOrthogonal::givens(2, 0, 1, (3, 4, 5));
        let s = t.orthogonal_transform(&a).unwrap();
        let e0 = s.entry(&MultiIndex::new(vec![1, 0]));
        let e1 = s.entry(&MultiIndex::new(vec![0, 1]));
        assert_eq!(e0, &RadialSymbolicExpr::scalar(2, rat(3, 5)));
        assert_eq!(e1, &RadialSymbolicExpr::scalar(2, rat(4, 5)));
        // Frobenius norm 1 preserved.
        assert_eq!(
            s.frobenius_norm_sq(),
            RadialSymbolicExpr::scalar(2, rat(1, 1))
        );
    }

    #[test]
    fn transform_agrees_with_direct_differentiation_of_composition() {
        // grad^m (u o A) computed two ways: substitute first and
        // differentiate, or differentiate and apply the transform law.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for dim in 2..=3usize {
            let u = RadialSymbolicExpr::from_term(xvar(dim, 0), 1)
                .add(&RadialSymbolicExpr::from_term(
                    xvar(dim, 0).mul(&xvar(dim, dim - 1)),
                    -2,
                ));
            for order in 1..=3u32 {
                let a = RationalOrthogonal::random(dim, &mut rng);
                let composed_first =
                    DerivativeTensor::of_expression(&u.compose_orthogonal(a.rows()), order);
                let transformed = DerivativeTensor::of_expression(&u, order)
                    .orthogonal_transform(&a)
                    .unwrap();
                for (key, e) in composed_first.entries() {
                    assert_eq!(e, transformed.entry(key), "dim {dim} order {order} key {key}");
                }
            }
        }
    }

    #[test]
    fn norm_invariance_exact_for_log_hessian() {
        // |grad^2 (log|.|)_A|^2 at x equals |grad^2 log|.||^2 at Ax, exactly.
        let t = DerivativeTensor::log_derivative_tensor(2, 2);
        let a = RationalOrthogonal::givens(2, 0, 1, (5, 12, 13));
        let s = t.orthogonal_transform(&a).unwrap();
        let lhs = s.frobenius_norm_sq();
        let rhs = t.frobenius_norm_sq().compose_orthogonal(a.rows());
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn ell_symbolic_known_values() {
        assert_eq!(ell_symbolic(2, 2).unwrap(), rat(2, 1));
        assert_eq!(ell_symbolic(3, 3).unwrap(), rat(28, 1));
        assert_eq!(ell_symbolic(5, 1).unwrap(), rat(1, 1));
        assert_eq!(ell_symbolic(4, 2).unwrap(), rat(4, 1));
    }

    #[test]
    fn operator_certificate_small_dims() {
        // N = 1 analogue and the paper-scale cases N = 2, 3.
        assert!(operator_l_apply(1).is_zero());
        assert!(operator_l_apply(2).is_zero());
        assert!(operator_l_apply(3).is_zero());
    }
}
