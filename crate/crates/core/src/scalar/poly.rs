//! Dense univariate polynomials in `s` with integer coefficients.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector. This is the storage layer behind
//! [`QScalar`](super::QScalar); nothing here is public outside the crate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Number of vanishing low-order coefficients (the power of `s` dividing it).
    pub fn low_zeros(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        ZPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        ZPoly(v)
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (a, b) in v.iter_mut().zip(short.iter()) {
            *a += b;
        }
        ZPoly::from_coeffs(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.0.len() == 1 {
            return self.scale(&other.0[0]);
        }
        if self.0.len() == 1 {
            return other.scale(&self.0[0]);
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        ZPoly(self.0.iter().map(|a| a / c).collect())
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_exact_scalar(&c)
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let mut r = self.0.clone();
        let db = b.degree();
        let lb = b.leading().expect("pseudo_rem by zero");
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[shift + i] -= &lr * bc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        ZPoly(r)
    }

    /// gcd in Z[s], normalized to positive leading coefficient.
    ///
    /// Uses the primitive remainder sequence; content is handled separately.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_with_content();
        }
        if other.is_zero() {
            return self.primitive_with_content();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                a = ZPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().scale(&cont)
    }

    fn primitive_with_content(&self) -> Self {
        if self.leading().is_some_and(|l| l.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact division in Z[s]; debug-asserts that the remainder vanishes.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.is_one() {
            return self.clone();
        }
        if d.0.len() == 1 {
            return self.div_exact_scalar(&d.0[0]);
        }
        let mut r = self.0.clone();
        let dd = d.degree();
        let ld = d.leading().unwrap();
        if r.len() <= dd {
            debug_assert!(self.is_zero(), "inexact polynomial division");
            return Self::zero();
        }
        let mut quot = vec![BigInt::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &r[i + dd];
            if c.is_zero() {
                continue;
            }
            let (qc, rem) = c.div_rem(ld);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            for (j, dc) in d.0.iter().enumerate() {
                r[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        ZPoly::from_coeffs(quot)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Homogeneous Horner in integers: sum c_i p^i d^(n-i), then one division by d^n.
        let (p, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * p + c * &dpow;
            dpow *= d;
        }
        if self.0.is_empty() {
            return BigRational::zero();
        }
        BigRational::new(acc, dpow / d)
    }

    /// Lexicographic order on (degree, coefficients from the top), used only to
    /// give `QScalar` a total order for deterministic sorting.
    pub fn cmp_total(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - s^4) = (1 - s^2)(1 + s^2), (1 - s^6) = (1 - s^2)(1 + s^2 + s^4)
        let a = p(&[1, 0, 0, 0, -1]);
        let b = p(&[1, 0, 0, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_carries_content() {
        assert_eq!(p(&[4, 4]).gcd(&p(&[6, 6])), p(&[2, 2]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 5])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 0, 0, 0, -1]);
        let d = p(&[1, 0, -1]);
        assert_eq!(a.div_exact(&d), p(&[1, 0, 1]));
    }

    #[test]
    fn pseudo_remainder_zero_on_multiple() {
        let d = p(&[2, 3]);
        let a = d.mul(&p(&[5, 0, 7]));
        assert!(a.pseudo_rem(&d).is_zero());
    }
}
