//! First-order differential calculus on `Pol(C)_q`.
//!
//! The bimodule of one-forms is generated by `dz`, `dz*` with
//!
//! ```text
//! z dz  = q^-2 dz z      z* dz* = q^2 dz* z*
//! z* dz = q^2  dz z*     z dz*  = q^-2 dz* z
//! ```
//!
//! so commuting a generator of the algebra past either differential costs a
//! factor that depends only on the generator. Partial derivatives are read
//! off by expanding `d(word)` with the Leibniz rule and pushing each
//! differential to the right end (`Side::Right`) or to the left end
//! (`Side::Left`) of the word.

use crate::qpoly::{normal_order_word, Letter, NCPoly, TensorPoly};
use crate::scalar::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    ZStar,
}

impl Var {
    fn letter(self) -> Letter {
        match self {
            Var::Z => Letter::Z,
            Var::ZStar => Letter::ZStar,
        }
    }
}

/// Exponent of `q` in `y dx = q^e dx y`, for either differential `dx`.
fn commutation_exponent(y: Letter) -> i64 {
    match y {
        Letter::Z => -2,
        Letter::ZStar => 2,
    }
}

fn letters_of(j: u32, k: u32) -> Vec<Letter> {
    let mut w = vec![Letter::Z; j as usize];
    w.extend(std::iter::repeat_n(Letter::ZStar, k as usize));
    w
}

fn is_normal(w: &[Letter]) -> bool {
    !w.windows(2).any(|p| p[0] == Letter::ZStar && p[1] == Letter::Z)
}

/// Partial derivative of a word: the coefficient of `dx` once every
/// differential in `d(word)` has been moved to the requested end.
pub fn differentiate_word(word: &[Letter], side: Side, var: Var) -> NCPoly {
    let target = var.letter();
    let mut out = NCPoly::zero();
    for (i, &l) in word.iter().enumerate() {
        if l != target {
            continue;
        }
        let exponent: i64 = match side {
            Side::Right => word[i + 1..].iter().map(|&y| -commutation_exponent(y)).sum(),
            Side::Left => word[..i].iter().map(|&y| commutation_exponent(y)).sum(),
        };
        let mut rest = word[..i].to_vec();
        rest.extend_from_slice(&word[i + 1..]);
        let c = QScalar::q_pow(exponent);
        if is_normal(&rest) {
            let j = rest.iter().filter(|y| **y == Letter::Z).count() as u32;
            out.add_term((j, rest.len() as u32 - j), c);
        } else {
            out.add_scaled(&normal_order_word(&rest), &c);
        }
    }
    out
}

/// One of the four partial derivatives, defined by
/// `df = d^(r)f/dz dz + d^(r)f/dz* dz* = dz d^(l)f/dz + dz* d^(l)f/dz*`.
pub fn d_partial(f: &NCPoly, side: Side, var: Var) -> NCPoly {
    let mut out = NCPoly::zero();
    for (&(j, k), c) in f.iter() {
        out.add_scaled(&differentiate_word(&letters_of(j, k), side, var), c);
    }
    out
}

/// The bimodule twist: `dx g = twist(Right, g) dx` and `g dx = dx twist(Left, g)`.
pub fn differential_twist(g: &NCPoly, side: Side) -> NCPoly {
    let mut out = NCPoly::zero();
    for (&(a, b), c) in g.iter() {
        let e = (a as i64) * commutation_exponent(Letter::Z)
            + (b as i64) * commutation_exponent(Letter::ZStar);
        let e = match side {
            Side::Right => -e,
            Side::Left => e,
        };
        out.add_term((a, b), c * &QScalar::q_pow(e));
    }
    out
}

/// `(1 - z z*)^2`.
fn weight_squared() -> NCPoly {
    let w = &NCPoly::one() - &NCPoly::monomial(1, 1);
    w.nc_mul(&w)
}

/// The q-Laplace-Beltrami operator `(1 - z z*)^2 d^(l)/dz* d^(l)f/dz`.
pub fn box_op(f: &NCPoly) -> NCPoly {
    let inner = d_partial(f, Side::Left, Var::Z);
    let outer = d_partial(&inner, Side::Left, Var::ZStar);
    weight_squared().nc_mul(&outer)
}

/// The equivalent right-derivative form `q^2 d^(r)/dz* d^(r)f/dz (1 - z z*)^2`.
pub fn box_right_form(f: &NCPoly) -> NCPoly {
    let inner = d_partial(f, Side::Right, Var::Z);
    let outer = d_partial(&inner, Side::Right, Var::ZStar);
    outer.nc_mul(&weight_squared()).scale(&QScalar::q_pow(2))
}

/// `q^-2 (1 (x) 1 - (1 + q^-2) z* (x) z + q^-2 z*^2 (x) z^2)`.
pub fn box_tilde_middle() -> TensorPoly {
    let mut m = TensorPoly::zero();
    m.add_term((0, 0, 0, 0), QScalar::q_pow(-2));
    m.add_term(
        (0, 1, 1, 0),
        -(&QScalar::q_pow(-2) * &(&QScalar::one() + &QScalar::q_pow(-2))),
    );
    m.add_term((0, 2, 2, 0), QScalar::q_pow(-4));
    m
}

/// The tensor lift of the Laplace-Beltrami operator:
/// `(d^(r)f1/dz* (x) 1) * middle * (1 (x) d^(l)f2/dz)`, products taken legwise.
pub fn box_tilde(f: &TensorPoly) -> TensorPoly {
    let middle = box_tilde_middle();
    let mut out = TensorPoly::zero();
    for (&(a, b, c, d), x) in f.iter() {
        let left = d_partial(&NCPoly::monomial(a, b), Side::Right, Var::ZStar);
        if left.is_zero() {
            continue;
        }
        let right = d_partial(&NCPoly::monomial(c, d), Side::Left, Var::Z);
        if right.is_zero() {
            continue;
        }
        let lhs = TensorPoly::pure(&left, &NCPoly::one());
        let rhs = TensorPoly::pure(&NCPoly::one(), &right);
        out.add_scaled(&lhs.mul(&middle).mul(&rhs), x);
    }
    out
}

/// `f1 (x) f2 -> f2* (x) f1*`; `m0` intertwines it with the involution.
pub fn flip_conjugate(f: &TensorPoly) -> TensorPoly {
    f.involution_legs().flip()
}

/// Multiplication map `f1 (x) f2 -> f1 f2`.
pub fn m0(f: &TensorPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (&(a, b, c, d), x) in f.iter() {
        out.add_scaled(&NCPoly::monomial(a, b).nc_mul(&NCPoly::monomial(c, d)), x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(e)
    }

    fn one() -> QScalar {
        QScalar::one()
    }

    #[test]
    fn derivative_examples() {
        let z = NCPoly::z();
        let z2 = NCPoly::monomial(2, 0);
        assert_eq!(d_partial(&z, Side::Right, Var::Z), NCPoly::one());
        assert_eq!(
            d_partial(&z2, Side::Right, Var::Z),
            NCPoly::term(&one() + &q(2), 1, 0)
        );
        assert_eq!(
            d_partial(&z2, Side::Left, Var::Z),
            NCPoly::term(&one() + &q(-2), 1, 0)
        );
        for j in 0..5 {
            assert!(d_partial(&NCPoly::monomial(j, 0), Side::Right, Var::ZStar).is_zero());
        }
        assert!(d_partial(&NCPoly::one(), Side::Left, Var::ZStar).is_zero());
    }

    /// Closed forms in q-numbers, checked against the word rewriting.
    #[test]
    fn closed_form_monomial_derivatives() {
        use crate::scalar::q_number;
        for j in 0..5u32 {
            for k in 0..5u32 {
                let m = NCPoly::monomial(j, k);
                let dz_r = if j > 0 {
                    NCPoly::term(
                        &q_number(j as usize, 2) * &q(-2 * k as i64),
                        j - 1,
                        k,
                    )
                } else {
                    NCPoly::zero()
                };
                let dzs_r = if k > 0 {
                    NCPoly::term(q_number(k as usize, -2), j, k - 1)
                } else {
                    NCPoly::zero()
                };
                let dz_l = if j > 0 {
                    NCPoly::term(q_number(j as usize, -2), j - 1, k)
                } else {
                    NCPoly::zero()
                };
                let dzs_l = if k > 0 {
                    NCPoly::term(&q(-2 * j as i64) * &q_number(k as usize, 2), j, k - 1)
                } else {
                    NCPoly::zero()
                };
                assert_eq!(d_partial(&m, Side::Right, Var::Z), dz_r);
                assert_eq!(d_partial(&m, Side::Right, Var::ZStar), dzs_r);
                assert_eq!(d_partial(&m, Side::Left, Var::Z), dz_l);
                assert_eq!(d_partial(&m, Side::Left, Var::ZStar), dzs_l);
            }
        }
    }

    #[test]
    fn derivatives_respect_the_relation() {
        // d applied to the word z* z must match d applied to its normal form.
        let word = [Letter::ZStar, Letter::Z];
        let nf = normal_order_word(&word);
        for side in [Side::Left, Side::Right] {
            for var in [Var::Z, Var::ZStar] {
                assert_eq!(differentiate_word(&word, side, var), d_partial(&nf, side, var));
            }
        }
    }

    #[test]
    fn box_examples() {
        assert!(box_op(&NCPoly::one()).is_zero());
        assert!(box_op(&NCPoly::z()).is_zero());
        let f = NCPoly::zs().nc_mul(&NCPoly::z());
        let b = box_op(&f);
        assert_eq!(b, box_right_form(&f));
        // Value from an independent symbolic computation.
        let mut want = NCPoly::zero();
        want.add_term((0, 0), q(2));
        want.add_term((1, 1), -(&q(4) + &q(2)));
        want.add_term((2, 2), q(4));
        assert_eq!(b, want);
    }

    #[test]
    fn box_forms_agree_on_monomials() {
        for j in 0..=4 {
            for k in 0..=(4 - j) {
                let f = NCPoly::monomial(j, k);
                assert_eq!(box_op(&f), box_right_form(&f), "z^{j} zs^{k}");
            }
        }
    }

    #[test]
    fn box_tilde_examples() {
        let f = NCPoly::monomial(1, 1) + NCPoly::zs();
        assert!(box_tilde(&TensorPoly::pure(&NCPoly::z(), &f)).is_zero());
        assert!(box_tilde(&TensorPoly::pure(&f, &NCPoly::zs())).is_zero());
        let bt = box_tilde(&TensorPoly::pure(&NCPoly::zs(), &NCPoly::z()));
        assert_eq!(bt, box_tilde_middle());
    }

    #[test]
    fn m0_examples() {
        let p = m0(&TensorPoly::pure(&NCPoly::zs(), &NCPoly::z()));
        let mut want = NCPoly::term(q(2), 1, 1);
        want.add_term((0, 0), &one() - &q(2));
        assert_eq!(p, want);
        let f = NCPoly::monomial(2, 1);
        assert_eq!(m0(&TensorPoly::pure(&NCPoly::one(), &f)), f);
        assert_eq!(
            m0(&TensorPoly::pure(&NCPoly::z(), &NCPoly::zs())),
            NCPoly::monomial(1, 1)
        );
    }

    #[test]
    fn box_factorizes_through_box_tilde() {
        for a in 0..=3 {
            for b in 0..=3 {
                let f2 = NCPoly::monomial(0, a);
                let f1 = NCPoly::monomial(b, 0);
                assert_eq!(
                    box_op(&f2.nc_mul(&f1)),
                    m0(&box_tilde(&TensorPoly::pure(&f2, &f1))),
                    "zs^{a} z^{b}"
                );
            }
        }
    }

    #[test]
    fn box_tilde_commutes_with_outer_multipliers() {
        for (g1, f1, f2, g2) in [(1, 1, 1, 1), (2, 1, 2, 0), (1, 2, 1, 2), (0, 2, 2, 1)] {
            let lhs = box_tilde(&TensorPoly::pure(
                &NCPoly::monomial(g1, f1),
                &NCPoly::monomial(f2, g2),
            ));
            let inner = box_tilde(&TensorPoly::pure(
                &NCPoly::monomial(0, f1),
                &NCPoly::monomial(f2, 0),
            ));
            let left = TensorPoly::pure(&NCPoly::monomial(g1, 0), &NCPoly::one());
            let right = TensorPoly::pure(&NCPoly::one(), &NCPoly::monomial(0, g2));
            assert_eq!(lhs, left.mul(&inner).mul(&right));
        }
    }

    #[test]
    fn box_tilde_commutes_with_flip_conjugation() {
        for a in 0..=2 {
            for b in 0..=2 - a {
                for c in 0..=2 {
                    for d in 0..=2 - c {
                        let t = TensorPoly::pure(&NCPoly::monomial(a, b), &NCPoly::monomial(c, d));
                        assert_eq!(
                            box_tilde(&flip_conjugate(&t)),
                            flip_conjugate(&box_tilde(&t)),
                            "{t}"
                        );
                        assert_eq!(m0(&flip_conjugate(&t)), m0(&t).involution());
                    }
                }
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((0u32..=3, 0u32..=3, -3i64..4, -2i64..3), 1..4).prop_map(|ts| {
            let mut p = NCPoly::zero();
            for (j, k, c, e) in ts {
                if j + k <= 3 {
                    p.add_term((j, k), &QScalar::from_int(c) * &QScalar::q_pow(e));
                }
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn leibniz_rule(f in arb_poly(), g in arb_poly()) {
            let fg = f.nc_mul(&g);
            for var in [Var::Z, Var::ZStar] {
                // d(fg) = df g + f dg with differentials pushed right ...
                let right = d_partial(&f, Side::Right, var)
                    .nc_mul(&differential_twist(&g, Side::Right))
                    + f.nc_mul(&d_partial(&g, Side::Right, var));
                prop_assert_eq!(d_partial(&fg, Side::Right, var), right);
                // ... or left.
                let left = d_partial(&f, Side::Left, var).nc_mul(&g)
                    + differential_twist(&f, Side::Left).nc_mul(&d_partial(&g, Side::Left, var));
                prop_assert_eq!(d_partial(&fg, Side::Left, var), left);
            }
        }

        #[test]
        fn box_tilde_is_linear(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let a = TensorPoly::pure(&f, &g);
            let b = TensorPoly::pure(&h, &f);
            let mut sum = a.clone();
            sum.add_scaled(&b, &QScalar::q_pow(1));
            let mut want = box_tilde(&a);
            want.add_scaled(&box_tilde(&b), &QScalar::q_pow(1));
            prop_assert_eq!(box_tilde(&sum), want);
        }
    }
}
