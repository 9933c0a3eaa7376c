use std::collections::BTreeMap;
use std::fmt;

use super::{write_monomial, NCPoly};
use crate::scalar::QScalar;

/// Exponents `(j1, k1, j2, k2)` of `z^j1 z*^k1 (x) z^j2 z*^k2`.
pub type TensorExp = (u32, u32, u32, u32);

/// An element of `Pol(C)_q (x) Pol(C)_q`, each leg normal-ordered.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<TensorExp, QScalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    /// `f1 (x) f2`.
    pub fn pure(f1: &NCPoly, f2: &NCPoly) -> Self {
        let mut out = TensorPoly::zero();
        for (&(a, b), x) in f1.iter() {
            for (&(c, d), y) in f2.iter() {
                out.add_term((a, b, c, d), x * y);
            }
        }
        out
    }

    pub fn term(c: QScalar, e: TensorExp) -> Self {
        let mut out = TensorPoly::zero();
        out.add_term(e, c);
        out
    }

    pub fn terms(&self) -> &BTreeMap<TensorExp, QScalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TensorExp, &QScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: TensorExp, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            self.add_term(*e, x * c);
        }
    }

    pub fn scale(&self, c: &QScalar) -> TensorPoly {
        let mut out = TensorPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Product in the tensor-square algebra, leg by leg.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (&(a, b, c, d), x) in &self.terms {
            for (&(e, f, g, h), y) in &other.terms {
                let left = NCPoly::monomial(a, b).nc_mul(&NCPoly::monomial(e, f));
                let right = NCPoly::monomial(c, d).nc_mul(&NCPoly::monomial(g, h));
                let xy = x * y;
                for (&(i, j), u) in left.iter() {
                    let xyu = &xy * u;
                    for (&(k, l), v) in right.iter() {
                        out.add_term((i, j, k, l), &xyu * v);
                    }
                }
            }
        }
        out
    }

    /// The flip `f1 (x) f2 -> f2 (x) f1`.
    pub fn flip(&self) -> TensorPoly {
        TensorPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, c, d), x)| ((c, d, a, b), x.clone()))
                .collect(),
        }
    }

    /// Legwise involution `(x) *`.
    pub fn involution_legs(&self) -> TensorPoly {
        TensorPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, c, d), x)| ((b, a, d, c), x.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        struct Mono(u32, u32);
        impl fmt::Display for Mono {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0 == 0 && self.1 == 0 {
                    write!(f, "1")
                } else {
                    write_monomial(f, self.0, self.1)
                }
            }
        }
        for (i, (&(a, b, c, d), x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({x})*{}(x){}", Mono(a, b), Mono(c, d))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPoly({self})")
    }
}
