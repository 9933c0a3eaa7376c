//! JSON encodings of the computational objects.
//!
//! Every scalar is emitted as its canonical text (a reduced fraction in `s`),
//! or, when an evaluation point `s0` is set, as the exact rational value there.
//! Polynomials are lists of `[[j, k], coeff]` in canonical term order.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qpoly::{NCPoly, WindowedSeries};
use crate::scalar::{QScalar, TSeries};
use crate::star::{PkPolynomial, StarSeries};

pub const SCHEMA: u32 = 1;

/// Symbolic output, or exact numeric output at `s = s0`.
#[derive(Clone, Debug, Default)]
pub struct Renderer {
    s0: Option<BigRational>,
}

impl Renderer {
    pub fn symbolic() -> Self {
        Renderer { s0: None }
    }

    pub fn at(s0: BigRational) -> Self {
        Renderer { s0: Some(s0) }
    }

    pub fn s0(&self) -> Option<&BigRational> {
        self.s0.as_ref()
    }

    pub fn scalar(&self, x: &QScalar) -> Result<Value> {
        Ok(match &self.s0 {
            None => Value::String(x.to_string()),
            Some(s0) => Value::String(x.eval(s0)?.to_string()),
        })
    }

    pub fn ncpoly(&self, f: &NCPoly) -> Result<Value> {
        let terms = f
            .canonical_terms()
            .into_iter()
            .map(|((j, k), c)| Ok(json!([[j, k], self.scalar(c)?])))
            .collect::<Result<Vec<_>>>()?;
        Ok(Value::Array(terms))
    }

    /// A polynomial with both its term list and its printed form.
    pub fn ncpoly_with_text(&self, f: &NCPoly) -> Result<Value> {
        let mut v = json!({ "terms": self.ncpoly(f)? });
        if self.s0.is_none() {
            v["text"] = Value::String(f.to_string());
        }
        Ok(v)
    }

    pub fn tseries(&self, s: &TSeries) -> Result<Value> {
        Ok(Value::Array(
            s.coeffs()
                .iter()
                .map(|c| self.scalar(c))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn star_series(&self, psi: &StarSeries) -> Result<Value> {
        let terms = psi
            .coeffs()
            .iter()
            .map(|f| self.ncpoly(f))
            .collect::<Result<Vec<_>>>()?;
        let mut v = json!({ "order": psi.order(), "terms": terms });
        if self.s0.is_none() {
            v["text"] = Value::Array(
                psi.coeffs()
                    .iter()
                    .map(|f| Value::String(f.to_string()))
                    .collect(),
            );
        }
        Ok(v)
    }

    pub fn windowed(&self, w: &WindowedSeries) -> Result<Value> {
        let entries = w
            .entries()
            .iter()
            .map(|(&(j, k), s)| Ok(json!([[j, k], self.tseries(s)?])))
            .collect::<Result<Vec<_>>>()?;
        let warning = if w.boundary_touched() {
            Value::String(format!(
                "window J = {} used the last trusted column; increase the cutoff for a safety margin",
                w.window()
            ))
        } else {
            Value::Null
        };
        Ok(json!({
            "window": w.window(),
            "order": w.order(),
            "entries": entries,
            "warning": warning,
        }))
    }

    pub fn pk(&self, p: &PkPolynomial) -> Result<Value> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| self.scalar(c))
            .collect::<Result<Vec<_>>>()?;
        let mut v = json!({ "k": p.k(), "coeffs": coeffs });
        if self.s0.is_none() {
            v["text"] = Value::String(p.to_string());
        }
        Ok(v)
    }
}

/// Wraps a command result in the versioned envelope.
pub fn envelope(command: &str, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "result": result })
}

/// Machine-readable error kind.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::Pole { .. } => "pole",
        Error::NotPowerSeries => "not_power_series",
        Error::OrderMismatch { .. } => "order_mismatch",
        Error::InvalidCoefficientIndex(_) => "invalid_coefficient_index",
        Error::OutsideValidRange { .. } => "outside_valid_range",
        Error::InsufficientCutoff { .. } => "insufficient_cutoff",
        Error::NotInImage(_) => "not_in_image",
        Error::OutsideWindow { .. } => "outside_window",
        Error::Syntax { .. } => "syntax",
        Error::NegativeExponent { .. } => "negative_exponent",
        Error::NotScalar(_) => "not_scalar",
        Error::UnknownSuite(_) => "unknown_suite",
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut err = json!({ "kind": error_kind(e), "message": e.to_string() });
    match e {
        Error::Syntax { pos, .. } | Error::NegativeExponent { pos } => err["position"] = json!(pos),
        Error::InsufficientCutoff { needed, .. } => err["needed_cutoff"] = json!(needed),
        _ => {}
    }
    json!({ "schema": SCHEMA, "error": err })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_encoding() {
        let f = NCPoly::zs().nc_mul(&NCPoly::z());
        let v = Renderer::symbolic().ncpoly(&f).unwrap();
        assert_eq!(v, json!([[[0, 0], "1 - s^4"], [[1, 1], "s^4"]]));
        let n = Renderer::at(BigRational::new(1.into(), 2.into())).ncpoly(&f).unwrap();
        assert_eq!(n, json!([[[0, 0], "15/16"], [[1, 1], "1/16"]]));
    }

    #[test]
    fn series_encoding() {
        let psi = StarSeries::constant(NCPoly::z(), 1);
        let v = Renderer::symbolic().star_series(&psi).unwrap();
        assert_eq!(v["order"], 1);
        assert_eq!(v["terms"], json!([[[[1, 0], "1"]], []]));
    }

    #[test]
    fn pole_propagates() {
        let x = QScalar::one().checked_div(&(&QScalar::one() - &QScalar::s())).unwrap();
        let r = Renderer::at(BigRational::from_integer(1.into())).scalar(&x);
        assert!(matches!(r, Err(Error::Pole { .. })));
    }

    #[test]
    fn error_envelope() {
        let v = error_json(&Error::Syntax { pos: 3, msg: "x".into() });
        assert_eq!(v["schema"], 1);
        assert_eq!(v["error"]["kind"], "syntax");
        assert_eq!(v["error"]["position"], 3);
    }
}
