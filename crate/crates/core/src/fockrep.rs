//! Operators on the weighted space spanned by `z^m`, used as an independent
//! oracle for the star product, plus covariant symbols and the Berezin
//! transform.
//!
//! `I(z^j z*^k)` sends `z^m` to
//! `(q^2m; q^-2)_k / (t q^2m; q^-2)_k z^(m-k+j)` for `k <= m` and to zero
//! otherwise, with the t-dependence Taylor-expanded to the working order.
//! Operators only know the columns `m <= M`; a product `A B` can only be
//! trusted on columns whose image under `B` stays within the known columns of
//! `A`, and this range is tracked explicitly.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcalc::box_op;
use crate::qpoly::{NCPoly, WindowedSeries};
use crate::scalar::{qpochhammer, QScalar, TSeries};
use crate::star::{apply_operator_polynomial, pk_difference, StarSeries};

type Column = BTreeMap<usize, TSeries>;

/// A graded operator truncated to columns `0..=valid`, with entries in
/// `Q(s)[[t]]` modulo `t^(order+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FockOp {
    cutoff: usize,
    order: usize,
    raise: i64,
    columns: Vec<Column>,
}

impl FockOp {
    fn empty(cutoff: usize, order: usize, raise: i64, valid_len: usize) -> Self {
        FockOp {
            cutoff,
            order,
            raise,
            columns: vec![Column::new(); valid_len],
        }
    }

    pub fn zero(cutoff: usize, order: usize) -> Self {
        FockOp::empty(cutoff, order, 0, cutoff + 1)
    }

    pub fn identity(cutoff: usize, order: usize) -> Self {
        let mut op = FockOp::zero(cutoff, order);
        for (m, col) in op.columns.iter_mut().enumerate() {
            col.insert(m, TSeries::one(order));
        }
        op
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest `row - col` the operator can produce.
    pub fn raise(&self) -> i64 {
        self.raise
    }

    /// Highest trusted column, `-1` when none is.
    pub fn valid(&self) -> isize {
        self.columns.len() as isize - 1
    }

    pub fn column(&self, m: usize) -> Result<&BTreeMap<usize, TSeries>> {
        self.columns.get(m).ok_or(Error::OutsideValidRange {
            column: m,
            valid: self.valid(),
        })
    }

    pub fn entry(&self, row: usize, col: usize) -> Result<TSeries> {
        Ok(self
            .column(col)?
            .get(&row)
            .cloned()
            .unwrap_or_else(|| TSeries::zero(self.order)))
    }

    /// Nonzero entries as `((row, col), value)` over the trusted columns.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &TSeries)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(m, col)| col.iter().map(move |(&r, s)| ((r, m), s)))
    }

    fn check_compatible(&self, other: &FockOp) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &FockOp, sign: bool) -> Result<FockOp> {
        self.check_compatible(other)?;
        let len = self.columns.len().min(other.columns.len());
        let mut out = FockOp::empty(
            self.cutoff.max(other.cutoff),
            self.order,
            self.raise.max(other.raise),
            len,
        );
        for (m, col) in out.columns.iter_mut().enumerate() {
            *col = self.columns[m].clone();
            for (&r, s) in &other.columns[m] {
                let s = if sign { s.clone() } else { s.neg() };
                add_entry(col, r, &s);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FockOp) -> Result<FockOp> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &FockOp) -> Result<FockOp> {
        self.combine(other, false)
    }

    /// Multiplication by a t-series (a central scalar).
    pub fn scale_series(&self, c: &TSeries) -> Result<FockOp> {
        if c.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: c.order(),
            });
        }
        let mut out = self.clone();
        for col in &mut out.columns {
            for s in col.values_mut() {
                *s = s.mul_unchecked(c);
            }
            col.retain(|_, s| !s.is_zero());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> FockOp {
        self.scale_series(&TSeries::constant(c.clone(), self.order))
            .expect("orders agree")
    }

    /// Composition `self . other`; trusted on columns `m` with
    /// `m <= valid(other)` and `m + max(0, raise(other)) <= valid(self)`.
    pub fn mul(&self, other: &FockOp) -> Result<FockOp> {
        self.check_compatible(other)?;
        let reach = self.valid() - other.raise.max(0) as isize;
        let len = (other.valid().min(reach) + 1).max(0) as usize;
        let columns: Vec<Column> = (0..len)
            .into_par_iter()
            .map(|m| {
                let mut col = Column::new();
                for (&mid, b) in &other.columns[m] {
                    for (&r, a) in &self.columns[mid] {
                        add_entry(&mut col, r, &a.mul_unchecked(b));
                    }
                }
                col
            })
            .collect();
        Ok(FockOp {
            cutoff: self.cutoff.max(other.cutoff),
            order: self.order,
            raise: self.raise + other.raise,
            columns,
        })
    }

    pub fn pow(&self, n: u32) -> Result<FockOp> {
        let mut acc = FockOp::identity(self.cutoff, self.order);
        for _ in 0..n {
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    /// Entrywise equality on the columns both operators trust.
    pub fn agrees_with(&self, other: &FockOp) -> Result<bool> {
        Ok(self.residual(other)?.is_zero())
    }

    /// `self - other` restricted to the common trusted columns.
    pub fn residual(&self, other: &FockOp) -> Result<FockOp> {
        self.sub(other)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

impl std::fmt::Debug for FockOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockOp")
            .field("cutoff", &self.cutoff)
            .field("order", &self.order)
            .field("raise", &self.raise)
            .field("valid", &self.valid())
            .field("entries", &self.entries().collect::<Vec<_>>())
            .finish()
    }
}

fn add_entry(col: &mut Column, row: usize, s: &TSeries) {
    if s.is_zero() {
        return;
    }
    match col.get_mut(&row) {
        Some(e) => {
            e.add_assign_unchecked(s);
            if e.is_zero() {
                col.remove(&row);
            }
        }
        None => {
            col.insert(row, s.clone());
        }
    }
}

/// `(q^2m; q^-2)_k / (t q^2m; q^-2)_k`, expanded to order `order`.
fn weight(k: usize, m: usize, order: usize) -> TSeries {
    if k > m {
        return TSeries::zero(order);
    }
    let top = QScalar::q_pow(2 * m as i64);
    let num = qpochhammer(&top, -2, k);
    // (t q^2m; q^-2)_k as a polynomial in t.
    let mut den = vec![QScalar::one()];
    for i in 0..k {
        let c = QScalar::q_pow(2 * (m - i) as i64);
        let mut next = den.clone();
        next.push(QScalar::zero());
        for (e, d) in den.iter().enumerate() {
            next[e + 1] = &next[e + 1] - &(d * &c);
        }
        den = next;
    }
    TSeries::from_rational(&[num], &den, order).expect("unit constant term")
}

/// Matrix of `I(z^j z*^k)` on columns `0..=cutoff`.
pub fn i_op(j: u32, k: u32, cutoff: usize, order: usize) -> FockOp {
    let (j, k) = (j as usize, k as usize);
    let mut op = FockOp::empty(cutoff, order, j as i64 - k as i64, cutoff + 1);
    for m in k..=cutoff {
        op.columns[m].insert(m - k + j, weight(k, m, order));
    }
    op
}

/// Linear extension of [`i_op`].
pub fn i_op_poly(f: &NCPoly, cutoff: usize, order: usize) -> FockOp {
    let mut op = FockOp::zero(cutoff, order);
    let mut raise = None;
    for (&(j, k), c) in f.iter() {
        let term = i_op(j, k, cutoff, order).scale(c);
        op = op.add(&term).expect("same order");
        raise = Some(raise.map_or(term.raise, |r: i64| r.max(term.raise)));
    }
    op.raise = raise.unwrap_or(0);
    op
}

/// The shift `z^m -> z^(m+1)`.
pub fn zhat(cutoff: usize, order: usize) -> FockOp {
    let mut op = FockOp::empty(cutoff, order, 1, cutoff + 1);
    for (m, col) in op.columns.iter_mut().enumerate() {
        col.insert(m + 1, TSeries::one(order));
    }
    op
}

/// `(z^m, z^m) = (q^2; q^2)_m / (t q^2; q^2)_m` as a t-series.
pub fn norm_squared(m: usize, order: usize) -> TSeries {
    let q2 = QScalar::q_pow(2);
    let num = qpochhammer(&q2, 2, m);
    let mut den = vec![QScalar::one()];
    for i in 1..=m {
        let c = QScalar::q_pow(2 * i as i64);
        let mut next = den.clone();
        next.push(QScalar::zero());
        for (e, d) in den.iter().enumerate() {
            next[e + 1] = &next[e + 1] - &(d * &c);
        }
        den = next;
    }
    TSeries::from_rational(&[num], &den, order).expect("unit constant term")
}

/// Adjoint of [`zhat`]: `z^m -> (z^m, z^m)/(z^(m-1), z^(m-1)) z^(m-1)`.
pub fn zhat_star(cutoff: usize, order: usize) -> FockOp {
    let mut op = FockOp::empty(cutoff, order, -1, cutoff + 1);
    let mut prev = norm_squared(0, order);
    for m in 1..=cutoff {
        let cur = norm_squared(m, order);
        let ratio = cur
            .mul_unchecked(&prev.inverse().expect("norms are units in Q(s)[[t]]"));
        op.columns[m].insert(m - 1, ratio);
        prev = cur;
    }
    op
}

/// `Q(sum f_n t^n) = sum I(f_n) t^n`.
pub fn q_map(psi: &StarSeries, cutoff: usize) -> FockOp {
    let order = psi.order();
    let mut op = FockOp::zero(cutoff, order);
    let mut raise: Option<i64> = None;
    for (n, f) in psi.coeffs().iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let term = i_op_poly(f, cutoff, order)
            .scale_series(&TSeries::monomial(QScalar::one(), n, order))
            .expect("same order");
        raise = Some(raise.map_or(term.raise, |r| r.max(term.raise)));
        op = op.add(&term).expect("same order");
    }
    op.raise = raise.unwrap_or(0);
    op
}

/// The unique `a_jk` with `sum a_jk I(z^j z*^k) = A`, for `j, k <= window`.
///
/// For a fixed shift `d = j - k` the column `m` of `A` at row `m + d` is
/// `sum_{k <= m} a_(k+d, k) w_k(m)`, so the coefficients are found in order of
/// increasing `k`, each by dividing out the invertible leading weight `w_m(m)`.
pub fn covariant_symbol(a: &FockOp, window: u32) -> Result<WindowedSeries> {
    let j_max = window as usize;
    if a.valid() < j_max as isize {
        let needed = a.cutoff + (j_max as isize - a.valid()) as usize;
        return Err(Error::InsufficientCutoff {
            cutoff: a.cutoff,
            window: j_max,
            needed,
        });
    }
    let order = a.order;
    let mut out = WindowedSeries::new(window, order);
    let weights: Vec<Vec<TSeries>> = (0..=j_max)
        .map(|m| (0..=m).map(|k| weight(k, m, order)).collect())
        .collect();
    let leading_inverses = (0..=j_max)
        .map(|m| {
            weights[m][m].inverse().map_err(|_| {
                Error::NotInImage(format!("leading weight at column {m} is not invertible"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for d in -(j_max as i64)..=(j_max as i64) {
        let k_min = (-d).max(0) as usize;
        let k_max = (j_max as i64 - d.max(0)) as usize;
        let mut found: Vec<(usize, TSeries)> = Vec::new();
        for m in k_min..=k_max {
            let row = (m as i64 + d) as usize;
            let mut rest = a.entry(row, m)?;
            for (k, ak) in &found {
                rest = rest.sub(&ak.mul_unchecked(&weights[m][*k]))?;
            }
            let am = rest.mul_unchecked(&leading_inverses[m]);
            if !am.is_zero() {
                out.insert(row as u32, m as u32, am.clone())?;
                found.push((m, am));
            }
        }
    }
    out.mark_boundary(a.valid() == j_max as isize);
    Ok(out)
}

/// `B_{q,t}(z*^j z^k)`: the covariant symbol of `zhat_star^j zhat^k`.
pub fn berezin(j: u32, k: u32, window: u32, cutoff: usize, order: usize) -> Result<WindowedSeries> {
    let op = zhat_star(cutoff, order)
        .pow(j)?
        .mul(&zhat(cutoff, order).pow(k)?)?;
    covariant_symbol(&op, window)
}

/// `[f, (p_1(box) - p_0(box)) f, ..., (p_K(box) - p_(K-1)(box)) f]` with
/// `f = z*^j z^k` in normal order.
pub fn berezin_expansion(j: u32, k: u32, terms: usize) -> Vec<NCPoly> {
    let f = NCPoly::monomial(0, j).nc_mul(&NCPoly::monomial(k, 0));
    let mut out = vec![f.clone()];
    for n in 1..=terms {
        let diff = pk_difference(n).expect("n >= 1");
        out.push(apply_operator_polynomial(&diff, box_op, &f));
    }
    out
}
