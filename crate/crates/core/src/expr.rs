//! A small expression language for elements of `Pol(C)_q`.
//!
//! ```text
//! expr   = term (('+' | '-') term)*
//! term   = unary (('*' | '/') unary)*
//! unary  = '-' unary | power
//! power  = atom ('^' '-'? INT)?
//! atom   = 'z' | 'zs' | 'q' | 's' | INT | '(' expr ')'
//! ```
//!
//! Products are taken in written order in the noncommutative algebra, so
//! `zs*z` normal-orders to `q^2 z zs + 1 - q^2`. Division and negative powers
//! are only allowed for scalar operands. The printed form of an [`NCPoly`]
//! parses back to the same element.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qpoly::NCPoly;
use crate::scalar::QScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Z,
    ZStar,
    Q,
    S,
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division, with the position of the `/` for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    /// Power, with the position of the `^`.
    Pow(Box<Expr>, i64, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Z,
    ZStar,
    Q,
    S,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let tok = match &text[start..i] {
                    "z" => Token::Z,
                    "zs" => Token::ZStar,
                    "q" => Token::Q,
                    "s" => Token::S,
                    other => {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: format!("unknown identifier '{other}'"),
                        })
                    }
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{}'", text[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    let at = self.offset();
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        self.pos += 1;
        let negative = self.peek() == Some(&Token::Minus);
        if negative {
            self.pos += 1;
        }
        let Some(Token::Int(n)) = self.peek().cloned() else {
            return self.error("expected an integer exponent");
        };
        self.pos += 1;
        let n: i64 = match i64::try_from(&n) {
            Ok(n) if n <= u32::MAX as i64 => n,
            _ => return self.error("exponent too large"),
        };
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }, at))
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        self.pos += 1;
        Ok(match tok {
            Token::Z => Expr::Z,
            Token::ZStar => Expr::ZStar,
            Token::Q => Expr::Q,
            Token::S => Expr::S,
            Token::Int(n) => Expr::Int(n),
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                inner
            }
            _ => {
                self.pos -= 1;
                return self.error("expected an operand");
            }
        })
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn to_ncpoly(&self) -> Result<NCPoly> {
        Ok(match self {
            Expr::Z => NCPoly::z(),
            Expr::ZStar => NCPoly::zs(),
            Expr::Q => NCPoly::constant(QScalar::q()),
            Expr::S => NCPoly::constant(QScalar::s()),
            Expr::Int(n) => NCPoly::constant(QScalar::from_bigint(n.clone())),
            Expr::Neg(a) => -a.to_ncpoly()?,
            Expr::Add(a, b) => a.to_ncpoly()? + b.to_ncpoly()?,
            Expr::Sub(a, b) => a.to_ncpoly()? - b.to_ncpoly()?,
            Expr::Mul(a, b) => a.to_ncpoly()?.nc_mul(&b.to_ncpoly()?),
            Expr::Div(a, b, _) => {
                let d = b
                    .to_ncpoly()?
                    .as_scalar()
                    .ok_or_else(|| Error::NotScalar(format!("divisor {b}")))?;
                a.to_ncpoly()?.scale(&d.inv()?)
            }
            Expr::Pow(a, n, at) => {
                let base = a.to_ncpoly()?;
                if *n >= 0 {
                    base.pow(*n as u32)
                } else {
                    let c = base
                        .as_scalar()
                        .ok_or(Error::NegativeExponent { pos: *at })?;
                    NCPoly::constant(c.pow(*n)?)
                }
            }
        })
    }
}

/// Parses and evaluates in one step.
pub fn parse_poly(text: &str) -> Result<NCPoly> {
    parse(text)?.to_ncpoly()
}

/// Parses an expression that must evaluate to a scalar.
pub fn parse_scalar(text: &str) -> Result<QScalar> {
    let p = parse_poly(text)?;
    p.as_scalar()
        .ok_or_else(|| Error::NotScalar(text.to_string()))
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mul(..) | Expr::Div(..) => 1,
        Expr::Neg(..) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Z => write!(f, "z"),
            Expr::ZStar => write!(f, "zs"),
            Expr::Q => write!(f, "q"),
            Expr::S => write!(f, "s"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_operand(f, a, 2)
            }
            Expr::Add(a, b) => {
                write!(f, "{a} + ")?;
                write_operand(f, b, 1)
            }
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                write_operand(f, b, 1)
            }
            Expr::Mul(a, b) => {
                write_operand(f, a, 1)?;
                write!(f, "*")?;
                write_operand(f, b, 2)
            }
            Expr::Div(a, b, _) => {
                write_operand(f, a, 1)?;
                write!(f, "/")?;
                write_operand(f, b, 2)
            }
            Expr::Pow(a, n, _) => {
                write_operand(f, a, 4)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(e)
    }

    #[test]
    fn examples() {
        let rel = parse_poly("zs*z").unwrap();
        assert_eq!(
            rel,
            NCPoly::term(q(2), 1, 1) + NCPoly::constant(&QScalar::one() - &q(2))
        );
        assert_eq!(parse_poly("z^2").unwrap(), NCPoly::monomial(2, 0));
        assert_eq!(
            parse_poly("(1-q^2)*z*zs").unwrap(),
            NCPoly::term(&QScalar::one() - &q(2), 1, 1)
        );
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("s^2").unwrap(), QScalar::q());
        assert_eq!(parse_scalar("q^-1").unwrap(), q(-1));
        assert_eq!(parse_scalar("1/2*s^4").unwrap(), &QScalar::from_rational(&num_rational::BigRational::new(1.into(), 2.into())) * &q(2));
        assert_eq!(parse_scalar("(1 - q^2)/(1 - q)").unwrap(), &QScalar::one() + &q(1));
        assert!(matches!(parse_scalar("z"), Err(Error::NotScalar(_))));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("z + "), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse("z $ 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(z"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("w"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("z z"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse_poly("zs^-1"),
            Err(Error::NegativeExponent { pos: 2 })
        ));
        assert!(matches!(parse_poly("1/z"), Err(Error::NotScalar(_))));
        assert!(matches!(parse_poly("z/(q-q)"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn printer_round_trip_on_expressions() {
        for text in ["zs*z", "-(z + zs)^2", "(1 - q^2)*z*zs", "z - (zs - 1)", "s^-3/(1 + s)"] {
            let e = parse(text).unwrap();
            let again = parse(&e.to_string()).unwrap();
            assert_eq!(e.to_ncpoly().unwrap(), again.to_ncpoly().unwrap(), "{text}");
        }
    }

    #[test]
    fn canonical_text_round_trips() {
        let f = parse_poly("(zs*z)^3 - 1/3*s^-5*zs^2*z + (1+q)/(1-q)*z^2").unwrap();
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4, -4i64..5, 0i64..3), 0..5).prop_map(|v| {
            let mut f = NCPoly::zero();
            for (j, k, c, e, d) in v {
                let mut x = &QScalar::from_int(c) * &QScalar::s_pow(e);
                if d > 0 {
                    x = x.checked_div(&(&QScalar::one() + &QScalar::s_pow(d))).unwrap();
                }
                f.add_term((j, k), x);
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn parse_print_identity(f in arb_poly()) {
            prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
    }
}
