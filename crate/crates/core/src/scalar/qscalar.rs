use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::ZPoly;
use crate::error::{Error, Result};

/// An element of the rational function field Q(s), where `s` stands for
/// `q^(1/2)`.
///
/// Stored as `s^shift * num / den` with `num`, `den` in Z[s], neither
/// divisible by `s`, coprime in Z[s] (content included) and `den` with a
/// positive leading coefficient. That makes the representation unique, so
/// structural equality is field equality. Zero is `0/1` with shift 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            shift: 0,
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QScalar {
            shift: 0,
            num: ZPoly::constant(n),
            den: ZPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(
            0,
            ZPoly::constant(r.numer().clone()),
            ZPoly::constant(r.denom().clone()),
        )
    }

    /// `s^e`.
    pub fn s_pow(e: i64) -> Self {
        QScalar {
            shift: e,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    /// `q^e = s^(2e)`.
    pub fn q_pow(e: i64) -> Self {
        Self::s_pow(2 * e)
    }

    pub fn s() -> Self {
        Self::s_pow(1)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Laurent polynomial `sum c_i s^(low + i)`.
    pub fn laurent(low: i64, coeffs: &[i64]) -> Self {
        let num = ZPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        Self::normalized(low, num, ZPoly::one())
    }

    fn normalized(mut shift: i64, mut num: ZPoly, mut den: ZPoly) -> Self {
        assert!(!den.is_zero(), "QScalar with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let nz = num.low_zeros();
        if nz > 0 {
            num = num.shift_down(nz);
            shift += nz as i64;
        }
        let dz = den.low_zeros();
        if dz > 0 {
            den = den.shift_down(dz);
            shift -= dz as i64;
        }
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            if den.leading().is_some_and(|l| l.is_negative()) {
                num = num.neg();
                den = den.neg();
            }
        }
        QScalar { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a power of `s` (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Returns the rational value if this scalar does not depend on `s`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.shift == 0 && self.num.degree() == 0 && self.den.degree() == 0 {
            if self.is_zero() {
                return Some(BigRational::zero());
            }
            Some(BigRational::new(
                self.num.coeffs()[0].clone(),
                self.den.coeffs()[0].clone(),
            ))
        } else {
            None
        }
    }

    /// Numerator and monic denominator as coefficient lists over Q (low degree
    /// first), with the power of `s` folded into whichever side it belongs to.
    pub fn numerator_denominator(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        if self.is_zero() {
            return (vec![], vec![BigRational::one()]);
        }
        let (num, den) = if self.shift >= 0 {
            (self.num.shift_up(self.shift as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift_up((-self.shift) as usize))
        };
        let lc = den.leading().unwrap().clone();
        let to_q = |p: &ZPoly| {
            p.coeffs()
                .iter()
                .map(|c| BigRational::new(c.clone(), lc.clone()))
                .collect::<Vec<_>>()
        };
        (to_q(&num), to_q(&den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv_unchecked())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Self {
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        QScalar {
            shift: -self.shift,
            num,
            den,
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = QScalar::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Exact value at `s = s0`.
    pub fn eval(&self, s0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = self.den.eval(s0);
        if d.is_zero() || (s0.is_zero() && self.shift < 0) {
            return Err(Error::Pole {
                at: s0.to_string(),
            });
        }
        let mut v = self.num.eval(s0) / d;
        if self.shift != 0 {
            let p = num_traits::pow::pow(s0.clone(), self.shift.unsigned_abs() as usize);
            v = if self.shift > 0 { v * p } else { v / p };
        }
        Ok(v)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        // Align to the lower power of s.
        let low = self.shift.min(other.shift);
        let a = self.num.shift_up((self.shift - low) as usize);
        let b = other.num.shift_up((other.shift - low) as usize);
        let b = if negate { b.neg() } else { b };
        if self.den == other.den {
            let num = a.add(&b);
            if self.den.is_one() {
                return Self::normalized(low, num, ZPoly::one());
            }
            return Self::normalized(low, num, self.den.clone());
        }
        let num = a.mul(&other.den).add(&b.mul(&self.den));
        Self::normalized(low, num, self.den.mul(&other.den))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            return QScalar {
                shift,
                num: self.num.mul(&other.num),
                den: ZPoly::one(),
            };
        }
        // Cross-cancel; each factor is already reduced.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = other.den.div_exact(&g1);
        let n2 = other.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        QScalar { shift, num, den }
    }

    /// Total order with no algebraic meaning; used to sort output.
    pub fn cmp_total(&self, other: &Self) -> Ordering {
        self.shift
            .cmp(&other.shift)
            .then_with(|| self.num.cmp_total(&other.num))
            .then_with(|| self.den.cmp_total(&other.den))
    }

    pub(crate) fn laurent_terms(&self) -> Vec<(i64, BigInt)> {
        self.num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    pub(crate) fn den_terms(&self) -> Vec<(i64, BigInt)> {
        self.den
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect()
    }

    /// Number of summands in the printed numerator, used by printers to decide
    /// on parentheses.
    pub fn term_count(&self) -> usize {
        if self.den.degree() > 0 {
            return 2;
        }
        self.num.coeffs().iter().filter(|c| !c.is_zero()).count()
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &[(i64, BigRational)],
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match (*e, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (e, true) => write_s_power(f, e)?,
            (e, false) => {
                write!(f, "{mag}*")?;
                write_s_power(f, e)?;
            }
        }
    }
    Ok(())
}

fn write_s_power(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e == 1 {
        write!(f, "s")
    } else {
        write!(f, "s^{e}")
    }
}

/// Canonical text: a Laurent polynomial in `s` (ascending powers), or
/// `(numerator)/(denominator)` when the denominator is a nonconstant
/// polynomial. A constant denominator is folded into rational coefficients.
impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 {
            let d = &self.den.coeffs()[0];
            let terms: Vec<_> = self
                .laurent_terms()
                .into_iter()
                .map(|(e, c)| (e, BigRational::new(c, d.clone())))
                .collect();
            return write_terms(f, &terms);
        }
        let num: Vec<_> = self
            .laurent_terms()
            .into_iter()
            .map(|(e, c)| (e, BigRational::from_integer(c)))
            .collect();
        let den: Vec<_> = self
            .den_terms()
            .into_iter()
            .map(|(e, c)| (e, BigRational::from_integer(c)))
            .collect();
        write!(f, "(")?;
        write_terms(f, &num)?;
        write!(f, ")/(")?;
        write_terms(f, &den)?;
        write!(f, ")")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        self.mul_impl(rhs)
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(self, rhs: QScalar) -> QScalar {
        self.add_impl(&rhs, false)
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: QScalar) -> QScalar {
        self.add_impl(&rhs, true)
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        self.mul_impl(&rhs)
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -self.clone()
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QScalar {
    fn product<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::one(), |a, b| a * b)
    }
}
