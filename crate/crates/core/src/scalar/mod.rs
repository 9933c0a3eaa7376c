//! Exact scalars: the field Q(s) with `q = s^2`, q-Pochhammer symbols, and
//! power series in `t` truncated at a fixed order.

mod poly;
mod qscalar;
mod series;

pub use qscalar::QScalar;
pub use series::TSeries;

use num_rational::BigRational;

use crate::error::Result;

/// `(a; q^base)_n = prod_{i=0}^{n-1} (1 - a q^(base*i))`.
pub fn qpochhammer(a: &QScalar, base_exponent: i64, n: usize) -> QScalar {
    let one = QScalar::one();
    (0..n)
        .map(|i| &one - &(a * &QScalar::q_pow(base_exponent * i as i64)))
        .product()
}

/// The q-number `[n]_{q^base} = 1 + q^base + ... + q^(base(n-1))`.
pub fn q_number(n: usize, base_exponent: i64) -> QScalar {
    (0..n)
        .map(|i| QScalar::q_pow(base_exponent * i as i64))
        .sum()
}

/// Exact numeric value of `x` at `s = s0`.
pub fn eval_numeric(x: &QScalar, s0: &BigRational) -> Result<BigRational> {
    x.eval(s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(e)
    }

    fn one() -> QScalar {
        QScalar::one()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cancellation_to_one() {
        let a = q(2);
        let b = &one() - &q(2);
        assert!((&a + &b).is_one());
    }

    #[test]
    fn self_division() {
        let s2 = QScalar::s_pow(2);
        assert!(s2.checked_div(&s2).unwrap().is_one());
    }

    #[test]
    fn polynomial_division() {
        // (1 - q^4)/(1 - q^2): long division gives 1 + q^2.
        let a = &one() - &q(4);
        let b = &one() - &q(2);
        let r = a.checked_div(&b).unwrap();
        assert_eq!(r, &one() + &q(2));
        assert!(r.is_laurent());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            one().checked_div(&QScalar::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn canonical_text() {
        assert_eq!((&one() - &q(2)).to_string(), "1 - s^4");
        assert_eq!(QScalar::s_pow(-3).to_string(), "s^-3");
        let r = one().checked_div(&(&one() + &q(1))).unwrap();
        assert_eq!(r.to_string(), "(1)/(1 + s^2)");
        let half = QScalar::from_rational(&rat(1, 2));
        assert_eq!((&half * &q(2)).to_string(), "1/2*s^4");
        assert_eq!(QScalar::zero().to_string(), "0");
    }

    #[test]
    fn monic_denominator_view() {
        let x = QScalar::from_int(3)
            .checked_div(&(&QScalar::from_int(2) * &(&one() - &q(1))))
            .unwrap();
        let (n, d) = x.numerator_denominator();
        assert_eq!(d.last().unwrap(), &rat(1, 1));
        assert_eq!(n, vec![rat(-3, 2)]);
        assert_eq!(d, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(qpochhammer(&q(2), 2, 1), &one() - &q(2));
        assert!(qpochhammer(&(QScalar::s_pow(7) + one()), 2, 0).is_one());
        assert!(qpochhammer(&q(-2), 2, 2).is_zero());
    }

    #[test]
    fn pochhammer_vanishes_past_k() {
        for k in 0..=8usize {
            for j in (k + 1)..=(k + 3) {
                assert!(qpochhammer(&q(-2 * k as i64), 2, j).is_zero());
            }
            assert!(!qpochhammer(&q(-2 * k as i64), 2, k).is_zero());
        }
    }

    #[test]
    fn numeric_evaluation() {
        assert_eq!(eval_numeric(&q(2), &rat(1, 2)).unwrap(), rat(1, 16));
        let x = (&one() - &q(2)).checked_div(&(&one() - &q(1))).unwrap();
        assert_eq!(eval_numeric(&x, &rat(1, 2)).unwrap(), rat(5, 4));
        let pole = one().checked_div(&(&one() - &q(1))).unwrap();
        assert!(matches!(
            eval_numeric(&pole, &rat(1, 1)),
            Err(Error::Pole { .. })
        ));
        assert!(eval_numeric(&QScalar::s_pow(-1), &rat(0, 1)).is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = QScalar> {
        (
            -4i64..4,
            prop::collection::vec(-3i64..4, 1..4),
            prop::collection::vec(-3i64..4, 1..3),
        )
            .prop_map(|(low, n, d)| {
                let den = QScalar::laurent(0, &d);
                let den = if den.is_zero() { QScalar::one() } else { den };
                QScalar::laurent(low, &n).checked_div(&den).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn pochhammer_splits(a in arb_scalar(), n in 0usize..6, m in 0usize..6) {
            let whole = qpochhammer(&a, 2, n + m);
            let shifted = &a * &q(2 * n as i64);
            prop_assert_eq!(whole, &qpochhammer(&a, 2, n) * &qpochhammer(&shifted, 2, m));
        }
    }
}
