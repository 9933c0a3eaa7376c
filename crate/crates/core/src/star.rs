//! The star product `f1 * f2 = f1 f2 + sum_k C_k(f1, f2) t^k` on
//! `Pol(C)_q[[t]]`, truncated at a fixed order.
//!
//! `C_k(f1, f2) = m0((p_k(B) - p_(k-1)(B))(f1 (x) f2))` where `B` is the tensor
//! lift of the Laplace-Beltrami operator and `p_k` are the polynomials built
//! by [`pk`]. Operator polynomials are evaluated by repeated application of
//! `B` to the tensor, never by forming operator powers symbolically.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::qcalc::{box_tilde, m0};
use crate::qpoly::{Exp, NCPoly, TensorPoly};
use crate::scalar::{qpochhammer, QScalar};

/// `p_k(x) = sum_{j=0}^k (q^-2k; q^2)_j / (q^2; q^2)_j^2 q^2j
///   prod_{i<j} (1 - q^2i ((1 - q^2)^2 x + 1 + q^2) + q^(4i+2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkPolynomial {
    k: usize,
    coeffs: Vec<QScalar>,
}

impl PkPolynomial {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Coefficients of `x^0 .. x^k`.
    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &QScalar) -> QScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(QScalar::zero(), |acc, c| &(&acc * x) + c)
    }
}

impl fmt::Display for PkPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn pk(k: usize) -> PkPolynomial {
    let one = QScalar::one();
    let q2 = QScalar::q_pow(2);
    let slope = &(&one - &q2) * &(&one - &q2);
    let mut coeffs = vec![QScalar::zero(); k + 1];
    // prod_{i<j} (c0_i + c1_i x), built up incrementally in j.
    let mut product = vec![one.clone()];
    for j in 0..=k {
        if j > 0 {
            let i = (j - 1) as i64;
            let c0 = &(&one - &(&QScalar::q_pow(2 * i) * &(&one + &q2))) + &QScalar::q_pow(4 * i + 2);
            let c1 = -(&QScalar::q_pow(2 * i) * &slope);
            let mut next = vec![QScalar::zero(); product.len() + 1];
            for (e, p) in product.iter().enumerate() {
                next[e] = &next[e] + &(p * &c0);
                next[e + 1] = &next[e + 1] + &(p * &c1);
            }
            product = next;
        }
        let num = &qpochhammer(&QScalar::q_pow(-2 * k as i64), 2, j) * &QScalar::q_pow(2 * j as i64);
        if num.is_zero() {
            continue;
        }
        let den = qpochhammer(&q2, 2, j);
        let weight = num
            .checked_div(&(&den * &den))
            .expect("(q^2; q^2)_j is nonzero");
        for (e, p) in product.iter().enumerate() {
            coeffs[e] = &coeffs[e] + &(p * &weight);
        }
    }
    PkPolynomial { k, coeffs }
}

/// Coefficients of `p_k - p_(k-1)` in `x`, for `k >= 1`.
pub fn pk_difference(k: usize) -> Result<Vec<QScalar>> {
    if k == 0 {
        return Err(Error::InvalidCoefficientIndex(0));
    }
    let hi = pk(k);
    let lo = pk(k - 1);
    Ok(hi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| match lo.coeffs().get(i) {
            Some(d) => c - d,
            None => c.clone(),
        })
        .collect())
}

/// Vector spaces over Q(s) that operator polynomials can act on.
pub(crate) trait Linear: Clone {
    fn zero_like(&self) -> Self;
    fn scaled(&self, c: &QScalar) -> Self;
    fn add_scaled_in_place(&mut self, other: &Self, c: &QScalar);
}

impl Linear for NCPoly {
    fn zero_like(&self) -> Self {
        NCPoly::zero()
    }
    fn scaled(&self, c: &QScalar) -> Self {
        self.scale(c)
    }
    fn add_scaled_in_place(&mut self, other: &Self, c: &QScalar) {
        self.add_scaled(other, c)
    }
}

impl Linear for TensorPoly {
    fn zero_like(&self) -> Self {
        TensorPoly::zero()
    }
    fn scaled(&self, c: &QScalar) -> Self {
        self.scale(c)
    }
    fn add_scaled_in_place(&mut self, other: &Self, c: &QScalar) {
        self.add_scaled(other, c)
    }
}

/// `p(op) v` by Horner's rule: `deg p` applications of `op`.
pub(crate) fn apply_operator_polynomial<V: Linear>(
    coeffs: &[QScalar],
    op: impl Fn(&V) -> V,
    v: &V,
) -> V {
    let Some((top, rest)) = coeffs.split_last() else {
        return v.zero_like();
    };
    let mut acc = v.scaled(top);
    for c in rest.iter().rev() {
        acc = op(&acc);
        acc.add_scaled_in_place(v, c);
    }
    acc
}

/// `C_k(f1, f2)`, `k >= 1`.
pub fn ck(k: usize, f1: &NCPoly, f2: &NCPoly) -> Result<NCPoly> {
    let diff = pk_difference(k)?;
    let tensor = TensorPoly::pure(f1, f2);
    Ok(m0(&apply_operator_polynomial(&diff, box_tilde, &tensor)))
}

/// An element of `Pol(C)_q[[t]]` modulo `t^(order+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct StarSeries {
    coeffs: Vec<NCPoly>,
}

impl StarSeries {
    pub fn zero(order: usize) -> Self {
        StarSeries {
            coeffs: vec![NCPoly::zero(); order + 1],
        }
    }

    /// `f` placed at `t^0`.
    pub fn constant(f: NCPoly, order: usize) -> Self {
        let mut s = StarSeries::zero(order);
        s.coeffs[0] = f;
        s
    }

    pub fn one(order: usize) -> Self {
        StarSeries::constant(NCPoly::one(), order)
    }

    pub fn from_coeffs(mut coeffs: Vec<NCPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, NCPoly::zero());
        StarSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &NCPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[NCPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NCPoly::is_zero)
    }

    pub fn add(&self, other: &StarSeries) -> Result<StarSeries> {
        check_orders(self.order(), other.order())?;
        Ok(StarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &QScalar) -> StarSeries {
        StarSeries {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Termwise `*`: `(sum f_j t^j)* = sum f_j* t^j`.
    pub fn involution(&self) -> StarSeries {
        StarSeries {
            coeffs: self.coeffs.iter().map(NCPoly::involution).collect(),
        }
    }

    /// Applies a linear map to every t-coefficient.
    pub fn map(&self, f: impl Fn(&NCPoly) -> NCPoly) -> StarSeries {
        StarSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// `z^i * self` (the star product with a holomorphic monomial on the left
    /// reduces to the ordinary product).
    pub fn mul_left_z_power(&self, i: u32) -> StarSeries {
        self.map(|f| f.mul_left_z_power(i))
    }

    pub fn mul_right_zstar_power(&self, l: u32) -> StarSeries {
        self.map(|f| f.mul_right_zstar_power(l))
    }
}

impl fmt::Debug for StarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_string()))
            .finish()
    }
}

fn check_orders(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::OrderMismatch { left, right });
    }
    Ok(())
}

/// Star product truncated at `order`.
pub fn star(f1: &NCPoly, f2: &NCPoly, order: usize) -> StarSeries {
    StarEngine::new(order).star_uncached(f1, f2)
}

type CoefficientCache = RwLock<HashMap<(Exp, Exp), Arc<Vec<NCPoly>>>>;

/// Star products at a fixed truncation order, memoized per monomial pair.
///
/// Every method is a pure function of its arguments; the cache only avoids
/// recomputation and may be shared across threads.
pub struct StarEngine {
    order: usize,
    differences: Vec<Vec<QScalar>>,
    cache: CoefficientCache,
}

impl StarEngine {
    pub fn new(order: usize) -> Self {
        let differences = (1..=order)
            .map(|k| pk_difference(k).expect("k >= 1"))
            .collect();
        StarEngine {
            order,
            differences,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[f1 f2, C_1, ..., C_order]` on a tensor, sharing the iterates
    /// `B^i(f1 (x) f2)` across all k.
    fn coefficients(&self, tensor: &TensorPoly) -> Vec<NCPoly> {
        let mut images = vec![m0(tensor)];
        let mut current = tensor.clone();
        for _ in 0..self.order {
            if current.is_zero() {
                break;
            }
            current = box_tilde(&current);
            images.push(m0(&current));
        }
        let mut out = vec![images[0].clone()];
        for diff in &self.differences {
            let mut c = NCPoly::zero();
            for (x, image) in diff.iter().zip(&images) {
                c.add_scaled(image, x);
            }
            out.push(c);
        }
        out
    }

    fn monomial_star(&self, a: Exp, b: Exp) -> Arc<Vec<NCPoly>> {
        if let Some(hit) = self.cache.read().unwrap().get(&(a, b)) {
            return hit.clone();
        }
        let tensor = TensorPoly::term(QScalar::one(), (a.0, a.1, b.0, b.1));
        let value = Arc::new(self.coefficients(&tensor));
        self.cache
            .write()
            .unwrap()
            .entry((a, b))
            .or_insert(value)
            .clone()
    }

    fn star_uncached(&self, f1: &NCPoly, f2: &NCPoly) -> StarSeries {
        StarSeries {
            coeffs: self.coefficients(&TensorPoly::pure(f1, f2)),
        }
    }

    /// `f1 * f2` modulo `t^(order+1)`.
    pub fn star(&self, f1: &NCPoly, f2: &NCPoly) -> StarSeries {
        let mut out = StarSeries::zero(self.order);
        self.accumulate_star(f1, f2, 0, &mut out);
        out
    }

    /// Adds `t^offset (f1 * f2)` into `out`, dropping terms past the order.
    fn accumulate_star(&self, f1: &NCPoly, f2: &NCPoly, offset: usize, out: &mut StarSeries) {
        for (&a, x) in f1.iter() {
            for (&b, y) in f2.iter() {
                let xy = x * y;
                let coeffs = self.monomial_star(a, b);
                for (n, c) in coeffs.iter().enumerate() {
                    if n + offset > self.order {
                        break;
                    }
                    out.coeffs[n + offset].add_scaled(c, &xy);
                }
            }
        }
    }

    /// The product `m(psi1, psi2) = sum_i (sum_{j+k=i} a_j * b_k) t^i`.
    pub fn m_series(&self, psi1: &StarSeries, psi2: &StarSeries) -> Result<StarSeries> {
        check_orders(psi1.order(), psi2.order())?;
        check_orders(self.order, psi1.order())?;
        let mut out = StarSeries::zero(self.order);
        for (j, a) in psi1.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in psi2.coeffs.iter().enumerate().take(self.order + 1 - j) {
                if !b.is_zero() {
                    self.accumulate_star(a, b, j + k, &mut out);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::box_tilde_middle;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(e)
    }

    fn one() -> QScalar {
        QScalar::one()
    }

    #[test]
    fn low_pk() {
        assert_eq!(pk(0).coeffs(), &[one()]);
        assert_eq!(pk(1).coeffs(), &[one(), &one() - &q(2)]);
        // p_2 = 1 + 2(1 - q^2) x + (1 - q^2)^2/(1 + q^2) x^2
        let p2 = pk(2);
        let a = &one() - &q(2);
        assert_eq!(p2.coeffs()[1], &QScalar::from_int(2) * &a);
        assert_eq!(p2.coeffs()[2], (&a * &a).checked_div(&(&one() + &q(2))).unwrap());
    }

    #[test]
    fn pk_degree_and_constant_term() {
        for k in 0..=8 {
            let p = pk(k);
            assert_eq!(p.degree(), k);
            assert!(p.eval(&QScalar::zero()).is_one());
        }
    }

    #[test]
    fn c0_is_rejected() {
        assert!(matches!(
            ck(0, &NCPoly::one(), &NCPoly::one()),
            Err(Error::InvalidCoefficientIndex(0))
        ));
    }

    #[test]
    fn c1_is_scaled_box_tilde() {
        let pairs = [
            (NCPoly::zs(), NCPoly::z()),
            (NCPoly::monomial(1, 2), NCPoly::monomial(2, 1)),
            (NCPoly::monomial(0, 2), NCPoly::z() + NCPoly::monomial(1, 1)),
        ];
        for (f1, f2) in pairs {
            let want = m0(&box_tilde(&TensorPoly::pure(&f1, &f2))).scale(&(&one() - &q(2)));
            assert_eq!(ck(1, &f1, &f2).unwrap(), want);
        }
    }

    #[test]
    fn c1_of_zstar_z() {
        let c1 = ck(1, &NCPoly::zs(), &NCPoly::z()).unwrap();
        let want = m0(&box_tilde_middle()).scale(&(&one() - &q(2)));
        assert_eq!(c1, want);
        // Frozen from an independent symbolic computation.
        let mut frozen = NCPoly::zero();
        frozen.add_term((0, 0), &q(2) - &q(4));
        frozen.add_term((1, 1), &q(6) - &q(2));
        frozen.add_term((2, 2), &q(4) - &q(6));
        assert_eq!(c1, frozen);
    }

    #[test]
    fn c2_of_zstar_z_frozen() {
        let c2 = ck(2, &NCPoly::zs(), &NCPoly::z()).unwrap();
        let mut frozen = NCPoly::zero();
        frozen.add_term((0, 0), &q(4) - &q(6));
        frozen.add_term((1, 1), &q(10) - &q(6));
        frozen.add_term((2, 2), QScalar::laurent(8, &[-1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, -1]));
        frozen.add_term((3, 3), QScalar::laurent(12, &[1, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 1]));
        assert_eq!(c2, frozen);
    }

    #[test]
    fn holomorphic_left_factor_kills_corrections() {
        let f = NCPoly::monomial(1, 2) + NCPoly::zs();
        for i in 0..3 {
            for k in 1..=3 {
                assert!(ck(k, &NCPoly::monomial(i, 0), &f).unwrap().is_zero());
            }
            let s = star(&NCPoly::monomial(i, 0), &f, 3);
            assert_eq!(s, StarSeries::constant(NCPoly::monomial(i, 0).nc_mul(&f), 3));
            let s = star(&f, &NCPoly::monomial(0, i), 3);
            assert_eq!(s, StarSeries::constant(f.nc_mul(&NCPoly::monomial(0, i)), 3));
        }
    }

    #[test]
    fn star_of_zstar_z() {
        let s = star(&NCPoly::zs(), &NCPoly::z(), 1);
        assert_eq!(s.coeff(0), &NCPoly::zs().nc_mul(&NCPoly::z()));
        assert_eq!(s.coeff(1), &ck(1, &NCPoly::zs(), &NCPoly::z()).unwrap());
    }

    #[test]
    fn shared_iterates_match_horner() {
        let f1 = NCPoly::monomial(1, 2) + NCPoly::monomial(0, 1).scale(&q(3));
        let f2 = NCPoly::monomial(2, 1) + NCPoly::z();
        let s = star(&f1, &f2, 4);
        for k in 1..=4 {
            assert_eq!(s.coeff(k), &ck(k, &f1, &f2).unwrap(), "k = {k}");
        }
        let engine = StarEngine::new(4);
        assert_eq!(engine.star(&f1, &f2), s);
    }

    #[test]
    fn m_series_unit_and_single_term() {
        let engine = StarEngine::new(3);
        let psi = engine.star(&NCPoly::zs(), &NCPoly::monomial(1, 1));
        assert_eq!(engine.m_series(&StarSeries::one(3), &psi).unwrap(), psi);
        assert_eq!(engine.m_series(&psi, &StarSeries::one(3)).unwrap(), psi);
        let a = StarSeries::constant(NCPoly::z(), 3);
        let b = StarSeries::constant(NCPoly::zs(), 3);
        assert_eq!(
            engine.m_series(&a, &b).unwrap(),
            star(&NCPoly::z(), &NCPoly::zs(), 3)
        );
        assert!(engine.m_series(&a, &StarSeries::one(2)).is_err());
    }

    #[test]
    fn m_series_associativity_witness() {
        let engine = StarEngine::new(3);
        let a = StarSeries::constant(NCPoly::zs(), 3);
        let b = StarSeries::constant(NCPoly::z(), 3);
        let ab = engine.m_series(&a, &b).unwrap();
        let ba = engine.m_series(&b, &a).unwrap();
        assert_eq!(
            engine.m_series(&ab, &a).unwrap(),
            engine.m_series(&a, &ba).unwrap()
        );
    }

    #[test]
    fn involution_examples() {
        let s = star(&NCPoly::zs(), &NCPoly::z(), 3);
        assert_eq!(s.involution(), s);
        let f = NCPoly::monomial(2, 1);
        assert_eq!(
            StarSeries::constant(f.clone(), 2).involution(),
            StarSeries::constant(f.involution(), 2)
        );
        let g = star(&NCPoly::monomial(0, 2), &NCPoly::monomial(1, 1), 3);
        assert_eq!(g.involution().involution(), g);
    }

    #[test]
    fn involution_reverses_products() {
        let engine = StarEngine::new(3);
        let pairs = [((0, 1), (2, 1)), ((1, 2), (2, 0)), ((0, 2), (1, 1))];
        for (a, b) in pairs {
            let p1 = StarSeries::constant(NCPoly::monomial(a.0, a.1), 3);
            let p2 = engine.star(&NCPoly::monomial(b.0, b.1), &NCPoly::zs());
            let lhs = engine.m_series(&p1, &p2).unwrap().involution();
            let rhs = engine
                .m_series(&p2.involution(), &p1.involution())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
