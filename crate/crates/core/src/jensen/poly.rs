//! Dense univariate polynomials with rational or real coefficients, and
//! Sturm-sequence root counting over the rationals.

use std::fmt;

use rug::{Float, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numkernel::format::to_significant;

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Exact(Vec<Rational>),
    Real(Vec<Float>),
}

fn trim<T>(mut c: Vec<T>, is_zero: impl Fn(&T) -> bool) -> Vec<T> {
    while c.last().is_some_and(&is_zero) {
        c.pop();
    }
    c
}

impl Polynomial {
    pub fn exact(coefficients: Vec<Rational>) -> Self {
        Polynomial::Exact(trim(coefficients, |c| c.is_zero()))
    }

    pub fn real(coefficients: Vec<Float>) -> Self {
        Polynomial::Real(trim(coefficients, |c| c.is_zero()))
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        Polynomial::exact(coefficients.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    fn len(&self) -> usize {
        match self {
            Polynomial::Exact(c) => c.len(),
            Polynomial::Real(c) => c.len(),
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Polynomial::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&[Rational]> {
        match self {
            Polynomial::Exact(c) => Some(c),
            Polynomial::Real(_) => None,
        }
    }

    /// Coefficient of x^i as a float (zero past the degree).
    pub fn coefficient(&self, i: usize, bits: u32) -> Float {
        match self {
            Polynomial::Exact(c) => c.get(i).map_or(Float::new(bits), |r| Float::with_val(bits, r)),
            Polynomial::Real(c) => c.get(i).map_or(Float::new(bits), |r| Float::with_val(bits, r)),
        }
    }

    /// Exact rational coefficients; real ones are converted without rounding.
    pub fn to_rationals(&self) -> Vec<Rational> {
        match self {
            Polynomial::Exact(c) => c.clone(),
            Polynomial::Real(c) => c.iter().map(|f| f.to_rational().expect("finite coefficient")).collect(),
        }
    }

    /// Largest absolute coefficient difference.
    pub fn max_distance(&self, other: &Polynomial, bits: u32) -> Float {
        let n = self.len().max(other.len());
        let mut best = Float::new(bits);
        for i in 0..n {
            let d = Float::with_val(bits, self.coefficient(i, bits) - other.coefficient(i, bits)).abs();
            if d > best {
                best = d;
            }
        }
        best
    }

    /// Coefficients as strings, ascending; reals with `sig` significant digits.
    pub fn coefficient_strings(&self, sig: usize) -> Vec<String> {
        match self {
            Polynomial::Exact(c) => c.iter().map(render_rational).collect(),
            Polynomial::Real(c) => c.iter().map(|f| to_significant(f, sig)).collect(),
        }
    }

    /// Human-readable form, descending degree, e.g. `0.999598 x^2 + 0.120905 x - 2.03828`.
    pub fn render(&self, sig: usize) -> String {
        let coeffs = self.coefficient_strings(sig);
        if coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.trim_start_matches('-').chars().all(|ch| ch == '0' || ch == '.') {
                continue;
            }
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, c.as_str()),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag == "1" && i > 0;
            if !unit {
                out.push_str(mag);
            }
            match i {
                0 => {}
                1 => out.push_str(if unit { "x" } else { " x" }),
                _ => {
                    if !unit {
                        out.push(' ');
                    }
                    out.push_str(&format!("x^{i}"));
                }
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn render_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(12))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coefficient_strings(30).serialize(s)
    }
}

fn rtrim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Rational::from(c * i as u32))
        .collect()
}

/// Remainder of a / b (b nonzero).
fn remainder(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let factor = Rational::from(r.last().unwrap() / lead);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&factor * c);
        }
        r.pop();
        r = rtrim(r);
    }
    r
}

fn quotient(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    if r.len() <= db {
        return Vec::new();
    }
    let mut q = vec![Rational::new(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = Rational::from(r.last().unwrap() / lead);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&factor * c);
        }
        q[shift] = factor;
        r.pop();
    }
    rtrim(q)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = remainder(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sign_changes(values: impl Iterator<Item = std::cmp::Ordering>) -> usize {
    let mut last = None;
    let mut changes = 0;
    for s in values.filter(|s| *s != std::cmp::Ordering::Equal) {
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    changes
}

/// Number of distinct real roots, by a Sturm sequence evaluated at
/// -infinity and +infinity.
pub fn distinct_real_roots(p: &[Rational]) -> usize {
    let p = rtrim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let n = seq.len();
        let r = remainder(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let at_pos = sign_changes(seq.iter().map(|q| q.last().unwrap().cmp0()));
    let at_neg = sign_changes(seq.iter().map(|q| {
        let s = q.last().unwrap().cmp0();
        if (q.len() - 1) % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }));
    at_neg - at_pos
}

/// Whether every complex root of `p` is real (with multiplicity).
pub fn all_roots_real(p: &[Rational]) -> Result<bool> {
    let p = rtrim(p.to_vec());
    if p.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if p.len() <= 2 {
        return Ok(true);
    }
    let g = gcd(&p, &derivative(&p));
    let squarefree = if g.len() > 1 { quotient(&p, &g) } else { p };
    Ok(distinct_real_roots(&squarefree) == squarefree.len() - 1)
}
