//! LaTeX rendering for presentation. Not a stable interface.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::qpoly::NCPoly;
use crate::scalar::QScalar;
use crate::star::{PkPolynomial, StarSeries};

fn terms_latex(terms: &[(i64, BigRational)], var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if c.is_negative() {
            out.push_str(if i == 0 { "-" } else { " - " });
        } else if i > 0 {
            out.push_str(" + ");
        }
        let coeff = if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        };
        match (*e, mag.is_one()) {
            (0, _) => out.push_str(&coeff),
            (e, true) => out.push_str(&power(var, e)),
            (e, false) => {
                out.push_str(&coeff);
                out.push_str(&power(var, e));
            }
        }
    }
    out
}

fn power(var: &str, e: i64) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{{{e}}}")
    }
}

fn integer_terms(terms: Vec<(i64, BigInt)>, d: &BigInt) -> Vec<(i64, BigRational)> {
    terms
        .into_iter()
        .map(|(e, c)| (e, BigRational::new(c, d.clone())))
        .collect()
}

pub fn scalar_latex(x: &QScalar) -> String {
    let den = x.den_terms();
    if den.len() == 1 && den[0].0 == 0 {
        return terms_latex(&integer_terms(x.laurent_terms(), &den[0].1), "s");
    }
    let one = BigInt::one();
    format!(
        "\\frac{{{}}}{{{}}}",
        terms_latex(&integer_terms(x.laurent_terms(), &one), "s"),
        terms_latex(&integer_terms(den, &one), "s")
    )
}

fn monomial_latex(j: u32, k: u32) -> String {
    let mut parts = Vec::new();
    match j {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{{{j}}}")),
    }
    match k {
        0 => {}
        1 => parts.push("z^{*}".to_string()),
        _ => parts.push(format!("z^{{*{k}}}")),
    }
    parts.join(" ")
}

pub fn ncpoly_latex(f: &NCPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, ((j, k), c)) in f.canonical_terms().into_iter().enumerate() {
        let mono = monomial_latex(j, k);
        let coeff = scalar_latex(c);
        let piece = if mono.is_empty() {
            coeff
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else if c.term_count() > 1 {
            format!("\\left({coeff}\\right) {mono}")
        } else {
            format!("{coeff} {mono}")
        };
        if i > 0 {
            match piece.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(&piece);
                }
            }
        } else {
            out.push_str(&piece);
        }
    }
    out
}

pub fn star_series_latex(psi: &StarSeries) -> String {
    let mut parts = Vec::new();
    for (n, f) in psi.coeffs().iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let body = ncpoly_latex(f);
        parts.push(match n {
            0 => body,
            1 => format!("\\left({body}\\right) t"),
            _ => format!("\\left({body}\\right) t^{{{n}}}"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    format!("{} + O(t^{{{}}})", parts.join(" + "), psi.order() + 1)
}

pub fn pk_latex(p: &PkPolynomial) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = scalar_latex(c);
        parts.push(match i {
            0 => coeff,
            _ if c.is_one() => power("x", i as i64),
            _ => format!("\\left({coeff}\\right) {}", power("x", i as i64)),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        assert_eq!(scalar_latex(&QScalar::s_pow(-3)), "s^{-3}");
        assert_eq!(scalar_latex(&(&QScalar::one() - &QScalar::q_pow(2))), "1 - s^{4}");
        let half = QScalar::from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(scalar_latex(&(&half * &QScalar::q())), "\\frac{1}{2}s^{2}");
        let r = QScalar::one().checked_div(&(&QScalar::one() + &QScalar::s())).unwrap();
        assert_eq!(scalar_latex(&r), "\\frac{1}{1 + s}");
    }

    #[test]
    fn polynomials() {
        let f = NCPoly::zs().nc_mul(&NCPoly::z());
        assert_eq!(ncpoly_latex(&f), "1 - s^{4} + s^{4} z z^{*}");
        assert_eq!(ncpoly_latex(&-NCPoly::monomial(0, 2)), "-z^{*2}");
        let psi = StarSeries::constant(NCPoly::z(), 2);
        assert_eq!(star_series_latex(&psi), "z + O(t^{3})");
    }
}
