//! The exponent alpha and its expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr := term (('*' | '/') term)*
//! term := integer | decimal | 'e' | 'pi' | 'sqrt' '(' expr ')'
//! ```
//!
//! Expressions built only from integer and decimal literals with `*` and `/`
//! are exact rationals (`0.01` is `1/100`). Anything touching `e`, `pi` or
//! `sqrt` is kept as an expression tree and evaluated at whatever precision
//! the caller asks for.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::float::Constant;
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use super::Precision;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Literal(Rational),
    E,
    Pi,
    Sqrt(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn as_rational(&self) -> Option<Rational> {
        match self {
            Expr::Literal(r) => Some(r.clone()),
            Expr::E | Expr::Pi | Expr::Sqrt(_) => None,
            Expr::Mul(a, b) => Some(a.as_rational()? * b.as_rational()?),
            Expr::Div(a, b) => Some(a.as_rational()? / b.as_rational()?),
        }
    }

    // every atom is >= 0 and e, pi > 0, so zero-ness is structural
    fn is_zero(&self) -> bool {
        match self {
            Expr::Literal(r) => *r == 0,
            Expr::E | Expr::Pi => false,
            Expr::Sqrt(x) => x.is_zero(),
            Expr::Mul(a, b) => a.is_zero() || b.is_zero(),
            Expr::Div(a, _) => a.is_zero(),
        }
    }

    fn eval(&self, bits: u32) -> Float {
        match self {
            Expr::Literal(r) => Float::with_val(bits, r),
            Expr::E => Float::with_val(bits, 1).exp(),
            Expr::Pi => Float::with_val(bits, Constant::Pi),
            Expr::Sqrt(x) => x.eval(bits).sqrt(),
            Expr::Mul(a, b) => a.eval(bits) * b.eval(bits),
            Expr::Div(a, b) => a.eval(bits) / b.eval(bits),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(self.pos, format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let rhs = self.term()?;
                    if rhs.is_zero() {
                        return Err(Error::DivisionByZero { offset: at });
                    }
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return self.err(self.pos, "expected a term, found end of input"),
        };
        let c = self.src[start];
        if c.is_ascii_digit() {
            return self.number();
        }
        if c.is_ascii_alphabetic() {
            let mut end = start;
            while end < self.src.len() && self.src[end].is_ascii_alphabetic() {
                end += 1;
            }
            let word = &self.src[start..end];
            self.pos = end;
            return match word {
                b"e" => Ok(Expr::E),
                b"pi" => Ok(Expr::Pi),
                b"sqrt" => {
                    self.expect(b'(')?;
                    let inner = self.expr()?;
                    self.expect(b')')?;
                    Ok(Expr::Sqrt(Box::new(inner)))
                }
                _ => self.err(
                    start,
                    format!("unknown identifier '{}'", String::from_utf8_lossy(word)),
                ),
            };
        }
        self.err(start, format!("unexpected character '{}'", c as char))
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = &self.src[start..self.pos];
        let mut digits = String::from_utf8_lossy(int_part).into_owned();
        let mut scale: u32 = 0;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == frac_start {
                return self.err(self.pos, "expected digits after decimal point");
            }
            digits.push_str(&String::from_utf8_lossy(&self.src[frac_start..self.pos]));
            scale = (self.pos - frac_start) as u32;
        }
        let num: Integer = digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "malformed number".into(),
        })?;
        let den = Integer::from(10u32).pow(scale);
        Ok(Expr::Literal(Rational::from((num, den))))
    }
}

/// A positive exponent alpha, exact when given as a ratio of integers.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaValue {
    Rational(Rational),
    Real(RealAlpha),
}

/// An irrational-kind alpha: its source text and a lazily evaluated tree.
#[derive(Debug, Clone, PartialEq)]
pub struct RealAlpha {
    text: String,
    expr: Expr,
}

impl RealAlpha {
    pub fn text(&self) -> &str {
        &self.text
    }
}

impl AlphaValue {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let expr = parser.expr()?;
        if let Some(c) = parser.peek() {
            return parser.err(parser.pos, format!("unexpected trailing '{}'", c as char));
        }
        if expr.is_zero() {
            return Err(Error::NonPositiveAlpha(text.trim().to_string()));
        }
        Ok(match expr.as_rational() {
            Some(r) => AlphaValue::Rational(r),
            None => AlphaValue::Real(RealAlpha {
                text: text.split_whitespace().collect(),
                expr,
            }),
        })
    }

    /// The rational a/b; errors unless b > 0 and a/b > 0.
    pub fn ratio(a: i64, b: i64) -> Result<Self> {
        if b == 0 {
            return Err(Error::DivisionByZero { offset: 0 });
        }
        let r = Rational::from((a, b));
        if r <= 0 {
            return Err(Error::NonPositiveAlpha(r.to_string()));
        }
        Ok(AlphaValue::Rational(r))
    }

    pub fn integer(a: u64) -> Result<Self> {
        Self::ratio(a as i64, 1)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlphaValue::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            AlphaValue::Rational(r) => Some(r),
            AlphaValue::Real(_) => None,
        }
    }

    /// Value at the given working precision.
    pub fn value_at(&self, prec: Precision) -> Float {
        self.value_bits(prec.bits())
    }

    pub(crate) fn value_bits(&self, bits: u32) -> Float {
        match self {
            AlphaValue::Rational(r) => Float::with_val(bits, r),
            AlphaValue::Real(a) => {
                let mut v = a.expr.eval(bits + 16);
                v.set_prec(bits);
                v
            }
        }
    }

    /// floor(alpha / 24), exact for rational alpha.
    pub fn q(&self) -> u64 {
        match self {
            AlphaValue::Rational(r) => {
                let v = Rational::from(r / 24u32).floor();
                v.numer().to_u64().unwrap_or(0)
            }
            AlphaValue::Real(_) => {
                let v = self.value_bits(256) / 24u32;
                v.floor().to_u32_saturating().map(u64::from).unwrap_or(0)
            }
        }
    }
}

impl FromStr for AlphaValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AlphaValue::parse(s)
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaValue::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            AlphaValue::Real(a) => f.write_str(&a.text),
        }
    }
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
