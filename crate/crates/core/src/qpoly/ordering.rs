//! Normal ordering.
//!
//! Two routes to the same normal form: the one-rule rewriting system
//! `z* z -> q^2 z z* + (1 - q^2)` applied to the leftmost offending pair, and a
//! closed form for the swap block `z*^b z^c` used by the multiplication fast
//! path. The rewriting system is the reference; tests compare the two.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::NCPoly;
use crate::scalar::{qpochhammer, QScalar};

/// A generator of the free algebra on `z`, `z*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Z,
    ZStar,
}

/// Normal form of a word in `z`, `z*` by leftmost rewriting.
pub fn normal_order_word(word: &[Letter]) -> NCPoly {
    let q2 = QScalar::q_pow(2);
    let rest = &QScalar::one() - &q2;
    let mut pending: HashMap<Vec<Letter>, QScalar> = HashMap::new();
    pending.insert(word.to_vec(), QScalar::one());
    let mut out = NCPoly::zero();
    while let Some(w) = pending.keys().next().cloned() {
        let c = pending.remove(&w).unwrap();
        if c.is_zero() {
            continue;
        }
        match w
            .windows(2)
            .position(|p| p[0] == Letter::ZStar && p[1] == Letter::Z)
        {
            None => {
                let j = w.iter().filter(|l| **l == Letter::Z).count() as u32;
                out.add_term((j, w.len() as u32 - j), c);
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped[i] = Letter::Z;
                swapped[i + 1] = Letter::ZStar;
                let mut dropped = w[..i].to_vec();
                dropped.extend_from_slice(&w[i + 2..]);
                let e = pending.entry(swapped).or_default();
                *e = &*e + &(&c * &q2);
                let e = pending.entry(dropped).or_default();
                *e = &*e + &(&c * &rest);
            }
        }
    }
    out
}

const TABLE_SIZE: usize = 32;

/// Coefficients `c_r` with `z*^b z^c = sum_r c_r z^(c-r) z*^(b-r)`,
/// `0 <= r <= min(b, c)`:
/// `c_r = q^(2(b-r)(c-r)) [b r]_{q^2} [c r]_{q^2} (q^2;q^2)_r`.
///
/// Blocks with `b, c < 32` are memoized on first use.
pub fn swap_coefficients(b: usize, c: usize) -> std::borrow::Cow<'static, [QScalar]> {
    if b < TABLE_SIZE && c < TABLE_SIZE {
        static BLOCKS: OnceLock<Vec<OnceLock<Vec<QScalar>>>> = OnceLock::new();
        let blocks =
            BLOCKS.get_or_init(|| (0..TABLE_SIZE * TABLE_SIZE).map(|_| OnceLock::new()).collect());
        let block = blocks[b * TABLE_SIZE + c].get_or_init(|| swap_block(binomial_table(), b, c));
        std::borrow::Cow::Borrowed(block)
    } else {
        let binom = gaussian_binomials(b.max(c));
        std::borrow::Cow::Owned(swap_block(&binom, b, c))
    }
}

fn binomial_table() -> &'static [Vec<QScalar>] {
    static BINOM: OnceLock<Vec<Vec<QScalar>>> = OnceLock::new();
    BINOM.get_or_init(|| gaussian_binomials(TABLE_SIZE))
}

fn swap_block(binom: &[Vec<QScalar>], b: usize, c: usize) -> Vec<QScalar> {
    let q2 = QScalar::q_pow(2);
    (0..=b.min(c))
        .map(|r| {
            let e = (2 * (b - r) * (c - r)) as i64;
            &(&QScalar::q_pow(e) * &(&binom[b][r] * &binom[c][r])) * &qpochhammer(&q2, 2, r)
        })
        .collect()
}

/// q^2-binomial coefficients by the Pascal rule `[n r] = [n-1 r-1] + q^(2r) [n-1 r]`.
fn gaussian_binomials(n_max: usize) -> Vec<Vec<QScalar>> {
    let mut rows: Vec<Vec<QScalar>> = vec![vec![QScalar::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|r| {
                let left = if r > 0 { prev[r - 1].clone() } else { QScalar::zero() };
                let right = prev
                    .get(r)
                    .map(|x| x * &QScalar::q_pow(2 * r as i64))
                    .unwrap_or_default();
                &left + &right
            })
            .collect();
        rows.push(row);
    }
    rows
}
