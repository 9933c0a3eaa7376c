use std::fmt;

use num_rational::BigRational;

use super::QScalar;
use crate::error::{Error, Result};

/// Power series in the formal parameter `t`, truncated modulo `t^(order+1)`.
///
/// The order is part of the value: combining series of different orders is
/// an [`Error::OrderMismatch`], never a silent truncation to the smaller one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TSeries {
    coeffs: Vec<QScalar>,
}

impl TSeries {
    pub fn zero(order: usize) -> Self {
        TSeries {
            coeffs: vec![QScalar::zero(); order + 1],
        }
    }

    pub fn constant(c: QScalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(QScalar::one(), order)
    }

    /// `c * t^n`, or zero when `n` exceeds the order.
    pub fn monomial(c: QScalar, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Builds a series from explicit coefficients, padding with zeros or
    /// dropping terms past `order`.
    pub fn from_coeffs(mut coeffs: Vec<QScalar>, order: usize) -> Self {
        coeffs.resize(order + 1, QScalar::zero());
        TSeries { coeffs }
    }

    /// Taylor expansion of `num(t)/den(t)` through `t^order`; both arguments
    /// are coefficient lists in `t`, low degree first.
    pub fn from_rational(num: &[QScalar], den: &[QScalar], order: usize) -> Result<Self> {
        let d0 = den.first().filter(|c| !c.is_zero()).ok_or(Error::NotPowerSeries)?;
        let d0_inv = d0.inv()?;
        let mut out: Vec<QScalar> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num.get(n).cloned().unwrap_or_default();
            for (i, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() && !out[n - i].is_zero() {
                    acc = &acc - &(d * &out[n - i]);
                }
            }
            out.push(&acc * &d0_inv);
        }
        Ok(TSeries { coeffs: out })
    }

    /// `1 / (1 - c t)`.
    pub fn geometric(c: &QScalar, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = QScalar::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = &p * c;
        }
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &QScalar {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QScalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(QScalar::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let order = self.order();
        let mut out = vec![QScalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TSeries { coeffs: out }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Multiplication by `t^n`.
    pub fn shift_t(&self, n: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![QScalar::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + n <= order {
                coeffs[i + n] = c.clone();
            }
        }
        TSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let one = [QScalar::one()];
        TSeries::from_rational(&one, &self.coeffs, self.order())
    }

    /// Coefficientwise numeric value at `s = s0`.
    pub fn eval(&self, s0: &BigRational) -> Result<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.eval(s0)).collect()
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(e)
    }

    #[test]
    fn geometric_series_from_rational() {
        let one = QScalar::one();
        let s = TSeries::from_rational(&[one.clone()], &[one.clone(), -q(2)], 2).unwrap();
        // 1/(1 - q^2 t) = 1 + q^2 t + q^4 t^2
        let want = TSeries::from_coeffs(vec![one, q(2), q(4)], 2);
        assert_eq!(s, want);
        assert_eq!(s, TSeries::geometric(&q(2), 2));
    }

    #[test]
    fn trivial_rational() {
        let one = QScalar::one();
        let s = TSeries::from_rational(&[one.clone()], &[one], 5).unwrap();
        assert!(s.is_one());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let one = QScalar::one();
        let a = TSeries::from_coeffs(vec![one.clone(), one.clone()], 1);
        let b = TSeries::from_coeffs(vec![one.clone(), -one], 1);
        assert!(a.mul(&b).unwrap().is_one());
    }

    #[test]
    fn non_power_series_rejected() {
        let one = QScalar::one();
        let r = TSeries::from_rational(&[one.clone()], &[QScalar::zero(), one], 3);
        assert!(matches!(r, Err(Error::NotPowerSeries)));
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TSeries::one(2);
        let b = TSeries::one(3);
        assert!(matches!(
            a.mul(&b),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        ));
        assert!(a.add(&b).is_err());
    }

    fn arb_tpoly() -> impl Strategy<Value = Vec<QScalar>> {
        prop::collection::vec((-3i64..4, -2i64..3), 1..4).prop_map(|v| {
            let mut out: Vec<QScalar> = v
                .into_iter()
                .map(|(c, e)| &QScalar::from_int(c) * &QScalar::q_pow(e))
                .collect();
            if out[0].is_zero() {
                out[0] = QScalar::one();
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rational_expansions_are_reciprocal(p in arb_tpoly(), r in arb_tpoly(), order in 0usize..5) {
            let a = TSeries::from_rational(&p, &r, order).unwrap();
            let b = TSeries::from_rational(&r, &p, order).unwrap();
            prop_assert!(a.mul(&b).unwrap().is_one());
        }
    }
}
