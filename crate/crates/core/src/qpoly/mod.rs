//! The algebra `Pol(C)_q` in the normal-ordered basis `z^j z*^k`.
//!
//! Products are reduced to normal form through the single relation
//! `z* z = q^2 z z* + 1 - q^2`. Canonical text is `coeff*z^j*zs^k` with `zs`
//! standing for `z*`; terms are emitted in lexicographic order of
//! `(j + k, j)`.

mod ordering;
mod tensor;
mod windowed;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

pub use ordering::{normal_order_word, swap_coefficients, Letter};
pub use tensor::TensorPoly;
pub use windowed::WindowedSeries;

use crate::error::Result;
use crate::scalar::QScalar;

/// Exponent pair `(j, k)` of the basis element `z^j z*^k`.
pub type Exp = (u32, u32);

/// A normal-ordered element of `Pol(C)_q`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Exp, QScalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::constant(QScalar::one())
    }

    pub fn constant(c: QScalar) -> Self {
        NCPoly::term(c, 0, 0)
    }

    /// `z^j z*^k`.
    pub fn monomial(j: u32, k: u32) -> Self {
        NCPoly::term(QScalar::one(), j, k)
    }

    /// `c z^j z*^k`.
    pub fn term(c: QScalar, j: u32, k: u32) -> Self {
        let mut p = NCPoly::zero();
        p.add_term((j, k), c);
        p
    }

    pub fn z() -> Self {
        NCPoly::monomial(1, 0)
    }

    pub fn zs() -> Self {
        NCPoly::monomial(0, 1)
    }

    pub fn terms(&self) -> &BTreeMap<Exp, QScalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, j: u32, k: u32) -> QScalar {
        self.terms.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value if this is a multiple of 1.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Largest total degree `j + k` in the support (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(j, k)| j + k).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exp, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            self.add_term(*e, if c.is_one() { x.clone() } else { x * c });
        }
    }

    pub fn scale(&self, c: &QScalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The normal-ordered product.
    pub fn nc_mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                let xy = x * y;
                if b == 0 || c == 0 {
                    out.add_term((a + c, b + d), xy);
                    continue;
                }
                for (r, w) in swap_coefficients(b as usize, c as usize).iter().enumerate() {
                    let r = r as u32;
                    out.add_term((a + c - r, b - r + d), &xy * w);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        (0..n).fold(NCPoly::one(), |acc, _| acc.nc_mul(self))
    }

    /// `z^i f`.
    pub fn mul_left_z_power(&self, i: u32) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(&(j, k), x)| ((j + i, k), x.clone())).collect(),
        }
    }

    /// `f z*^l`.
    pub fn mul_right_zstar_power(&self, l: u32) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(&(j, k), x)| ((j, k + l), x.clone())).collect(),
        }
    }

    /// The `*`-involution: `(z^j z*^k)* = z^k z*^j`, scalars fixed.
    pub fn involution(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(&(j, k), x)| ((k, j), x.clone())).collect(),
        }
    }

    /// Terms in canonical emission order, lexicographic in `(j + k, j)`.
    pub fn canonical_terms(&self) -> Vec<(Exp, &QScalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, x)| (*e, x)).collect();
        v.sort_by_key(|((j, k), _)| (j + k, *j));
        v
    }

    /// Coefficientwise numeric value at `s = s0`.
    pub fn eval(&self, s0: &BigRational) -> Result<Vec<(Exp, BigRational)>> {
        self.canonical_terms()
            .into_iter()
            .map(|(e, x)| Ok((e, x.eval(s0)?)))
            .collect()
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, j: u32, k: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match j {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{j}")),
    }
    match k {
        0 => {}
        1 => parts.push("zs".to_string()),
        _ => parts.push(format!("zs^{k}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((j, k), c)) in terms.into_iter().enumerate() {
            let text = c.to_string();
            let single = c.term_count() == 1;
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, text),
            };
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let is_unit = body == "1";
            if j == 0 && k == 0 {
                if single {
                    write!(f, "{body}")?;
                } else {
                    write!(f, "({body})")?;
                }
                continue;
            }
            if !is_unit {
                if single {
                    write!(f, "{body}*")?;
                } else {
                    write!(f, "({body})*")?;
                }
            }
            write_monomial(f, j, k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::one());
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-QScalar::one());
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.nc_mul(rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-QScalar::one())
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        self.nc_mul(&rhs)
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}
