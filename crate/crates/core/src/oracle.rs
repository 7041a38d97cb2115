//! Ground-truth coefficients of `P(x)^alpha = prod_k (1 - x^k)^(-alpha)`.
//!
//! The coefficients come from the logarithmic-derivative recurrence
//!
//! ```text
//! n p_alpha(n) = alpha * sum_{j=1}^{n} sigma(j) p_alpha(n - j),   p_alpha(0) = 1
//! ```
//!
//! which needs nothing from the circle method, so it can referee it. For a
//! rational alpha every entry is an exact rational; otherwise entries are
//! floats carrying ten guard digits beyond the working precision.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::format::to_significant;
use crate::numkernel::{AlphaValue, BigComplex, Precision};

/// Sum of the divisors of `j`.
pub fn sigma(j: u64) -> u64 {
    assert!(j >= 1, "sigma is defined for j >= 1");
    let mut total = 0;
    let mut d = 1;
    while d * d <= j {
        if j.is_multiple_of(d) {
            total += d;
            let e = j / d;
            if e != d {
                total += e;
            }
        }
        d += 1;
    }
    total
}

/// sigma(0..=n) by a divisor sieve; index 0 holds 0.
pub fn sigma_table(n: usize) -> Vec<u64> {
    let mut table = vec![0u64; n + 1];
    for d in 1..=n {
        let mut m = d;
        while m <= n {
            table[m] += d as u64;
            m += d;
        }
    }
    table
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Exact(Vec<Rational>),
    Real(Vec<Float>),
}

/// p_alpha(0..=upto).
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    alpha: AlphaValue,
    prec: Precision,
    values: Coefficients,
}

impl CoefficientTable {
    pub fn alpha(&self) -> &AlphaValue {
        &self.alpha
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn values(&self) -> &Coefficients {
        &self.values
    }

    pub fn len(&self) -> usize {
        match &self.values {
            Coefficients::Exact(v) => v.len(),
            Coefficients::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn upto(&self) -> usize {
        self.len() - 1
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        match &self.values {
            Coefficients::Exact(v) => Some(v),
            Coefficients::Real(_) => None,
        }
    }

    pub fn exact_at(&self, n: usize) -> Option<&Rational> {
        self.exact().and_then(|v| v.get(n))
    }

    /// Entry `n` as a float of `bits` precision.
    pub fn real_at(&self, n: usize, bits: u32) -> Float {
        match &self.values {
            Coefficients::Exact(v) => Float::with_val(bits, &v[n]),
            Coefficients::Real(v) => Float::with_val(bits, &v[n]),
        }
    }

    /// Entry `n` rendered for export: "num/den" or a decimal string.
    pub fn render(&self, n: usize) -> String {
        match &self.values {
            Coefficients::Exact(v) => format!("{}/{}", v[n].numer(), v[n].denom()),
            Coefficients::Real(v) => {
                to_significant(&v[n], self.prec.decimal_digits() as usize)
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for n in 0..self.len() {
            out.push_str(&format!("{},{}\n", n, self.render(n)));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Record<'a> {
            alpha: &'a AlphaValue,
            upto: usize,
            kind: &'static str,
            precision: u32,
            values: Vec<String>,
        }
        let record = Record {
            alpha: &self.alpha,
            upto: self.upto(),
            kind: if self.exact().is_some() { "exact" } else { "real" },
            precision: self.prec.decimal_digits(),
            values: (0..self.len()).map(|n| self.render(n)).collect(),
        };
        Ok(serde_json::to_string(&record)?)
    }
}

/// Coefficients p_alpha(0..=upto).
pub fn coeffs(alpha: &AlphaValue, upto: usize, prec: Precision) -> CoefficientTable {
    let sig = sigma_table(upto);
    let values = match alpha {
        AlphaValue::Rational(r) if *r.denom() == 1 => {
            Coefficients::Exact(integer_recurrence(r.numer(), &sig, upto))
        }
        AlphaValue::Rational(r) => Coefficients::Exact(rational_recurrence(r, &sig, upto)),
        AlphaValue::Real(_) => {
            let bits = prec.with_extra_guard(10).bits();
            Coefficients::Real(real_recurrence(&alpha.value_bits(bits), &sig, upto))
        }
    };
    CoefficientTable {
        alpha: alpha.clone(),
        prec,
        values,
    }
}

fn integer_recurrence(a: &Integer, sig: &[u64], upto: usize) -> Vec<Rational> {
    let mut p: Vec<Integer> = Vec::with_capacity(upto + 1);
    p.push(Integer::from(1));
    for n in 1..=upto {
        let mut acc = Integer::new();
        for j in 1..=n {
            acc += Integer::from(&p[n - j] * sig[j]);
        }
        acc *= a;
        acc /= n as u64;
        p.push(acc);
    }
    p.into_iter().map(Rational::from).collect()
}

fn rational_recurrence(alpha: &Rational, sig: &[u64], upto: usize) -> Vec<Rational> {
    let mut p: Vec<Rational> = Vec::with_capacity(upto + 1);
    p.push(Rational::from(1));
    for n in 1..=upto {
        let mut acc = Rational::new();
        for j in 1..=n {
            acc += Rational::from(&p[n - j] * sig[j]);
        }
        acc *= alpha;
        acc /= n as u64;
        p.push(acc);
    }
    p
}

fn real_recurrence(alpha: &Float, sig: &[u64], upto: usize) -> Vec<Float> {
    let bits = alpha.prec();
    let mut p: Vec<Float> = Vec::with_capacity(upto + 1);
    p.push(Float::with_val(bits, 1));
    for n in 1..=upto {
        let mut acc = Float::new(bits);
        for j in 1..=n {
            acc += Float::with_val(bits, &p[n - j] * sig[j]);
        }
        acc *= alpha;
        acc /= n as u64;
        p.push(acc);
    }
    p
}

/// Denominator of p_{a/b}(n): `b^n * prod_{p | b} p^{ord_p(n!)}`.
pub fn denominator(a: i64, b: u64, n: u64) -> Result<Integer> {
    if b == 0 {
        return Err(Error::InvalidArgument("denominator b must be positive".into()));
    }
    if Integer::from(a).gcd(&Integer::from(b)) != 1 {
        return Err(Error::NotCoprime { h: a, k: b as i64 });
    }
    let mut d = Integer::from(b).pow(n as u32);
    for p in prime_factors(b) {
        d *= Integer::from(p).pow(legendre(n, p) as u32);
    }
    Ok(d)
}

/// ord_p(n!) = sum_{i>=1} floor(n / p^i).
fn legendre(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

fn prime_factors(mut b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= b {
        if b.is_multiple_of(p) {
            out.push(p);
            while b.is_multiple_of(p) {
                b /= p;
            }
        }
        p += 1;
    }
    if b > 1 {
        out.push(b);
    }
    out
}

/// Largest |x| accepted by [`eval_p_alpha`].
pub const MAX_MODULUS: f64 = 0.999;

/// The product `prod_{k=1}^{K} exp(-alpha log(1 - x^k))` with the principal
/// logarithm.
///
/// The omitted tail multiplies the result by `exp(O(alpha |x|^(K+1) / (1 - |x|)))`.
pub fn eval_p_alpha(
    x: &BigComplex,
    alpha: &AlphaValue,
    factors: usize,
    prec: Precision,
) -> Result<BigComplex> {
    if factors == 0 {
        return Err(Error::InvalidArgument("need at least one factor".into()));
    }
    let bits = prec.bits() + 32;
    let x = BigComplex::new(Float::with_val(bits, &x.re), Float::with_val(bits, &x.im));
    let modulus = x.abs();
    if modulus > MAX_MODULUS {
        return Err(Error::OutsideDisk(modulus.to_string_radix(10, Some(12))));
    }
    let one = BigComplex::one(bits);
    let mut power = x.clone();
    let mut log_sum = BigComplex::zero(bits);
    for _ in 0..factors {
        log_sum = &log_sum + &(&one - &power).ln();
        power = &power * &x;
        if power.is_zero() {
            break;
        }
    }
    let a = alpha.value_bits(bits);
    let result = log_sum.scale(&(-a)).exp();
    let out = prec.bits();
    Ok(BigComplex::new(
        Float::with_val(out, &result.re),
        Float::with_val(out, &result.im),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sigma(j: u64) -> u64 {
        (1..=j).filter(|d| j.is_multiple_of(*d)).sum()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), 1);
        assert_eq!(sigma(6), 12);
        assert_eq!(sigma(12), brute_sigma(12));
        assert_eq!(brute_sigma(12), 28);
        let table = sigma_table(300);
        for j in 1..=300 {
            assert_eq!(table[j as usize], brute_sigma(j));
            assert_eq!(sigma(j), table[j as usize]);
        }
    }

    #[test]
    fn classical_partitions() {
        let t = coeffs(&AlphaValue::integer(1).unwrap(), 10, Precision::default());
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(t.exact_at(n).unwrap(), &Rational::from(*e));
        }
    }

    #[test]
    fn rational_alpha_entries() {
        let p = Precision::default();
        let t = coeffs(&AlphaValue::ratio(51, 7).unwrap(), 2, p);
        assert_eq!(t.exact_at(2).unwrap(), &Rational::from((1836, 49)));
        // sigma = (1, 3, 4): p1 = 1/2, p2 = (1/4)(3 + 1/2) = 7/8,
        // p3 = (1/6)(4 + 3/2 + 7/8) = 17/16
        let h = coeffs(&AlphaValue::ratio(1, 2).unwrap(), 3, p);
        assert_eq!(h.exact_at(1).unwrap(), &Rational::from((1, 2)));
        assert_eq!(h.exact_at(2).unwrap(), &Rational::from((7, 8)));
        assert_eq!(h.exact_at(3).unwrap(), &Rational::from((17, 16)));
    }

    #[test]
    fn table_invariants() {
        let p = Precision::default();
        for text in ["1/3", "2", "e", "sqrt(3)"] {
            let alpha = AlphaValue::parse(text).unwrap();
            let t = coeffs(&alpha, 5, p);
            let bits = p.bits();
            let a = alpha.value_at(p);
            assert_eq!(t.real_at(0, bits), 1);
            let d1 = Float::with_val(bits, t.real_at(1, bits) - &a).abs();
            assert!(d1 < 1e-60);
            let two = Float::with_val(bits, &a * Float::with_val(bits, &a + 3u32)) / 2u32;
            let d2 = Float::with_val(bits, t.real_at(2, bits) - &two).abs();
            assert!(d2 < 1e-58, "{text}");
            for n in 0..t.len() {
                assert!(t.real_at(n, bits) > 0);
            }
        }
    }

    #[test]
    fn denominators() {
        assert_eq!(denominator(5, 1, 17).unwrap(), 1);
        assert_eq!(denominator(51, 7, 2).unwrap(), 49);
        assert_eq!(denominator(1, 2, 3).unwrap(), 16);
        assert_eq!(denominator(51, 7, 10).unwrap(), Integer::from(1_977_326_743u64));
        assert!(matches!(denominator(2, 4, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn denominator_divides_formula() {
        let p = Precision::default();
        for (a, b) in [(1i64, 2u64), (51, 7), (5, 12), (7, 30), (1, 3)] {
            let t = coeffs(&AlphaValue::ratio(a, b as i64).unwrap(), 25, p);
            for n in 0..=25u64 {
                let d = denominator(a, b, n).unwrap();
                let den = t.exact_at(n as usize).unwrap().denom().clone();
                assert!(d.is_divisible(&den), "a/b = {a}/{b}, n = {n}");
            }
        }
    }

    #[test]
    fn product_at_origin() {
        let p = Precision::default();
        let z = BigComplex::zero(p.bits());
        let v = eval_p_alpha(&z, &AlphaValue::parse("e").unwrap(), 5, p).unwrap();
        assert_eq!(v.re, 1);
        assert!(v.im.is_zero());
    }

    #[test]
    fn product_matches_series_at_tenth() {
        let p = Precision::default();
        let bits = p.bits();
        let alpha = AlphaValue::integer(1).unwrap();
        let x = BigComplex::with_val(bits, Rational::from((1, 10)), 0);
        let prod = eval_p_alpha(&x, &alpha, 200, p).unwrap();
        // oracle: sum_n p(n) 10^-n
        let t = coeffs(&alpha, 200, p);
        let mut series = Rational::new();
        for n in 0..=200usize {
            series += Rational::from(t.exact_at(n).unwrap() / Integer::from(10u32).pow(n as u32));
        }
        let series = Float::with_val(bits, &series);
        let err = Float::with_val(bits, &prod.re - &series).abs();
        assert!(err < 1e-55, "{err}");
        assert!(prod.re.to_string().starts_with("1.1235827548486525111765"));
    }

    #[test]
    fn rejects_points_near_circle() {
        let p = Precision::default();
        let x = BigComplex::with_val(p.bits(), 0.9995, 0);
        let r = eval_p_alpha(&x, &AlphaValue::integer(1).unwrap(), 10, p);
        assert!(matches!(r, Err(Error::OutsideDisk(_))));
    }

    #[test]
    fn export_formats() {
        let t = coeffs(&AlphaValue::ratio(1, 2).unwrap(), 3, Precision::default());
        assert_eq!(t.to_csv(), "n,value\n0,1/1\n1,1/2\n2,7/8\n3,17/16\n");
        let json: serde_json::Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(json["values"][3], "17/16");
        assert_eq!(json["alpha"], "1/2");
    }
}
