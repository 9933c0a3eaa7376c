use std::collections::BTreeMap;

use super::{Exp, NCPoly};
use crate::error::{Error, Result};
use crate::scalar::TSeries;

/// The restriction of a formal series `sum a_jk z^j z*^k` with t-series
/// coefficients to exponents `j, k <= window`.
///
/// Entries outside the window are unknown, and every query or comparison
/// is only defined inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedSeries {
    window: u32,
    order: usize,
    entries: BTreeMap<Exp, TSeries>,
    boundary_touched: bool,
}

impl WindowedSeries {
    pub fn new(window: u32, order: usize) -> Self {
        WindowedSeries {
            window,
            order,
            entries: BTreeMap::new(),
            boundary_touched: false,
        }
    }

    /// Windowed view of `sum_n terms[n] t^n`; terms past the window are dropped.
    pub fn from_coefficients(terms: &[NCPoly], window: u32, order: usize) -> Self {
        let mut w = WindowedSeries::new(window, order);
        for (n, f) in terms.iter().enumerate().take(order + 1) {
            for (&(j, k), c) in f.iter() {
                if j <= window && k <= window {
                    let entry = w
                        .entries
                        .entry((j, k))
                        .or_insert_with(|| TSeries::zero(order));
                    entry.add_assign_unchecked(&TSeries::monomial(c.clone(), n, order));
                }
            }
        }
        w.entries.retain(|_, s| !s.is_zero());
        w
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &BTreeMap<Exp, TSeries> {
        &self.entries
    }

    /// Set when computing this series needed the last trusted column of the
    /// source operator.
    pub fn boundary_touched(&self) -> bool {
        self.boundary_touched
    }

    pub(crate) fn mark_boundary(&mut self, touched: bool) {
        self.boundary_touched = touched;
    }

    fn in_window(&self, j: u32, k: u32) -> Result<()> {
        if j > self.window || k > self.window {
            return Err(Error::OutsideWindow {
                j,
                k,
                window: self.window,
            });
        }
        Ok(())
    }

    pub fn insert(&mut self, j: u32, k: u32, s: TSeries) -> Result<()> {
        self.in_window(j, k)?;
        if s.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: s.order(),
            });
        }
        if s.is_zero() {
            self.entries.remove(&(j, k));
        } else {
            self.entries.insert((j, k), s);
        }
        Ok(())
    }

    pub fn get(&self, j: u32, k: u32) -> Result<TSeries> {
        self.in_window(j, k)?;
        Ok(self
            .entries
            .get(&(j, k))
            .cloned()
            .unwrap_or_else(|| TSeries::zero(self.order)))
    }

    /// The t^n slice as a polynomial (exact only inside the window).
    pub fn t_coefficient(&self, n: usize) -> NCPoly {
        let mut p = NCPoly::zero();
        for (&e, s) in &self.entries {
            p.add_term(e, s.coeff(n).clone());
        }
        p
    }

    /// `z^i * self`, keeping the same window.
    pub fn mul_left_z_power(&self, i: u32) -> WindowedSeries {
        self.shifted(i, 0)
    }

    /// `self * z*^l`, keeping the same window.
    pub fn mul_right_zstar_power(&self, l: u32) -> WindowedSeries {
        self.shifted(0, l)
    }

    fn shifted(&self, di: u32, dl: u32) -> WindowedSeries {
        let mut out = WindowedSeries::new(self.window, self.order);
        out.boundary_touched = self.boundary_touched;
        for (&(j, k), s) in &self.entries {
            if j + di <= self.window && k + dl <= self.window {
                out.entries.insert((j + di, k + dl), s.clone());
            }
        }
        out
    }

    /// Equality inside the common window; orders must match.
    pub fn agrees_with(&self, other: &WindowedSeries) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let w = self.window.min(other.window);
        let keys: std::collections::BTreeSet<_> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .filter(|(j, k)| *j <= w && *k <= w)
            .collect();
        Ok(keys
            .into_iter()
            .all(|&(j, k)| self.get(j, k).ok() == other.get(j, k).ok()))
    }
}
