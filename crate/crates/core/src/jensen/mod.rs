//! Jensen polynomials `J^{d,n}(x) = sum_j C(d,j) p_alpha(n+j) x^j`, their
//! renormalization towards the Hermite polynomials, and real-rootedness.

mod poly;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

pub use poly::{all_roots_real, distinct_real_roots, Polynomial};

use crate::circle;
use crate::error::{Error, Result};
use crate::numkernel::{pi, AlphaValue, Precision};
use crate::oracle;

/// Largest index served by the divisor-sum recurrence in [`Values::for_alpha`].
pub const ORACLE_LIMIT: usize = 3000;

/// Terms of the series used for large indices with irrational alpha.
pub const SERIES_TERMS: u64 = 100;

/// A window `p(offset), p(offset + 1), ...` of coefficient values.
#[derive(Debug, Clone)]
pub enum Values {
    Exact { offset: usize, data: Vec<Rational> },
    /// Approximations with a bound on their relative error.
    Real { offset: usize, data: Vec<Float>, relative_error: Float },
}

impl Values {
    pub fn from_table(table: &oracle::CoefficientTable) -> Self {
        match table.values() {
            oracle::Coefficients::Exact(v) => Values::Exact {
                offset: 0,
                data: v.clone(),
            },
            oracle::Coefficients::Real(v) => {
                let bits = table.precision().bits();
                Values::Real {
                    offset: 0,
                    data: v.clone(),
                    relative_error: Float::with_val(bits, Float::with_val(bits, 10u32).pow(-(table.precision().decimal_digits() as i32))),
                }
            }
        }
    }

    /// p_alpha(n..=n+d): the recurrence for small indices, otherwise exact
    /// recovery (rational alpha) or the 100-term series (irrational alpha).
    pub fn for_alpha(alpha: &AlphaValue, n: usize, d: usize, prec: Precision) -> Result<Self> {
        if n + d <= ORACLE_LIMIT {
            return Ok(Values::from_table(&oracle::coeffs(alpha, n + d, prec)));
        }
        match alpha {
            AlphaValue::Rational(r) => {
                let a = r.numer().to_i64().ok_or_else(|| Error::InvalidArgument("alpha numerator too large".into()))?;
                let b = r.denom().to_u64().ok_or_else(|| Error::InvalidArgument("alpha denominator too large".into()))?;
                let data = (n..=n + d)
                    .map(|i| circle::exact_value(a, b, i as u64))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Values::Exact { offset: n, data })
            }
            AlphaValue::Real(_) => Values::from_series(alpha, n, d, SERIES_TERMS, prec),
        }
    }

    /// p_alpha(n..=n+d) from the `terms`-term series, with the certified
    /// tail folded into `relative_error`.
    pub fn from_series(alpha: &AlphaValue, n: usize, d: usize, terms: u64, prec: Precision) -> Result<Self> {
        let bits = prec.bits();
        let mut data = Vec::with_capacity(d + 1);
        let mut worst = Float::with_val(bits, Float::with_val(bits, 10u32).pow(-(prec.decimal_digits() as i32)));
        for i in n..=n + d {
            let s = circle::partial_series_terms(alpha, i as u64, terms, prec)?;
            let rel = Float::with_val(bits, &s.tail_bound / &s.value).abs();
            worst = worst.max(&rel);
            data.push(s.value);
        }
        Ok(Values::Real {
            offset: n,
            data,
            relative_error: worst,
        })
    }

    fn range(&self) -> (usize, usize) {
        match self {
            Values::Exact { offset, data } => (*offset, data.len()),
            Values::Real { offset, data, .. } => (*offset, data.len()),
        }
    }

    fn check(&self, n: usize, d: usize) -> Result<()> {
        let (offset, len) = self.range();
        if n < offset || n + d >= offset + len {
            return Err(Error::InsufficientValues {
                needed: n + d,
                available: (offset + len).saturating_sub(1),
            });
        }
        Ok(())
    }

    pub fn get(&self, i: usize, bits: u32) -> Option<Float> {
        match self {
            Values::Exact { offset, data } => data.get(i.checked_sub(*offset)?).map(|r| Float::with_val(bits, r)),
            Values::Real { offset, data, .. } => data.get(i.checked_sub(*offset)?).map(|r| Float::with_val(bits, r)),
        }
    }

    pub fn relative_error(&self) -> Option<&Float> {
        match self {
            Values::Exact { .. } => None,
            Values::Real { relative_error, .. } => Some(relative_error),
        }
    }
}

fn binomial(n: usize, k: usize) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// J^{d,n}: coefficient of x^j is C(d,j) p(n+j).
pub fn jensen_poly(values: &Values, d: usize, n: usize) -> Result<Polynomial> {
    values.check(n, d)?;
    Ok(match values {
        Values::Exact { offset, data } => Polynomial::exact(
            (0..=d)
                .map(|j| Rational::from(&data[n + j - offset] * binomial(d, j)))
                .collect(),
        ),
        Values::Real { offset, data, .. } => Polynomial::real(
            (0..=d)
                .map(|j| Float::with_val(data[0].prec(), &data[n + j - offset] * binomial(d, j)))
                .collect(),
        ),
    })
}

/// Renormalization parameters A(n) and delta(n).
#[derive(Debug, Clone)]
pub struct RenormParams {
    pub a: Float,
    pub delta: Float,
}

/// `A(n) = 2 pi sqrt(alpha/(24n - alpha)) - 24/(24n - alpha)` and
/// `delta(n) = sqrt(12 pi alpha^{1/2} / (24n - alpha)^{3/2} - 288 alpha / (24n - alpha)^2)`.
pub fn renorm_params(alpha: &AlphaValue, n: u64, prec: Precision) -> Result<RenormParams> {
    let bits = prec.bits();
    let a = alpha.value_bits(bits);
    let m = Float::with_val(bits, n * 24) - &a;
    if m <= 0 {
        return Err(Error::RadicandNonPositive(n));
    }
    let pi = pi(bits);
    let big_a = Float::with_val(bits, &a / &m).sqrt() * Float::with_val(bits, &pi * 2u32)
        - Float::with_val(bits, 24u32) / &m;
    let m32 = Float::with_val(bits, (&m).pow(&Float::with_val(bits, 1.5)));
    let radicand = Float::with_val(bits, a.sqrt_ref()) * &pi * 12u32 / m32
        - Float::with_val(bits, &a * 288u32) / Float::with_val(bits, m.square_ref());
    if radicand <= 0 {
        return Err(Error::RadicandNonPositive(n));
    }
    Ok(RenormParams {
        a: big_a,
        delta: radicand.sqrt(),
    })
}

/// `delta^{-d} / p(n) * J^{d,n}((delta X - 1) / exp(A))`; the coefficient of
/// X^i is `delta^{i-d} / p(n) * sum_{j>=i} C(d,j) C(j,i) (-1)^{j-i} e^{-jA} p(n+j)`.
pub fn renormalize(values: &Values, params: &RenormParams, d: usize, n: usize, prec: Precision) -> Result<Polynomial> {
    values.check(n, d)?;
    let bits = prec.bits() + 32;
    let p0 = values.get(n, bits).expect("checked");
    if p0.is_zero() {
        return Err(Error::InvalidArgument(format!("p({n}) is zero")));
    }
    let decay = Float::with_val(bits, -&params.a).exp();
    let delta = Float::with_val(bits, &params.delta);
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut acc = Float::new(bits);
        let mut weight = Float::with_val(bits, (&decay).pow(i as u32));
        for j in i..=d {
            let c = binomial(d, j) * binomial(j, i);
            let mut term = Float::with_val(bits, &weight * values.get(n + j, bits).expect("checked")) * c;
            if (j - i) % 2 == 1 {
                term = -term;
            }
            acc += term;
            weight *= &decay;
        }
        let scale = Float::with_val(bits, (&delta).pow(i as i32 - d as i32)) / &p0;
        coeffs.push(Float::with_val(prec.bits(), acc * scale));
    }
    Ok(Polynomial::real(coeffs))
}

/// Ĵ^{d,n} for p_alpha.
pub fn renormalized_jensen(alpha: &AlphaValue, d: usize, n: usize, prec: Precision) -> Result<Polynomial> {
    let params = renorm_params(alpha, n as u64, prec)?;
    let values = Values::for_alpha(alpha, n, d, prec)?;
    renormalize(&values, &params, d, n, prec)
}

/// H_0 = 1, H_1 = X, H_{d+1} = X H_d - 2d H_{d-1}.
pub fn hermite(d: usize) -> Polynomial {
    let mut prev = vec![Integer::from(1)];
    if d == 0 {
        return Polynomial::exact(vec![Rational::from(1)]);
    }
    let mut cur = vec![Integer::new(), Integer::from(1)];
    for k in 1..d {
        let mut next = vec![Integer::new(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= Integer::from(c * (2 * k as u32));
        }
        prev = cur;
        cur = next;
    }
    Polynomial::exact(cur.into_iter().map(Rational::from).collect())
}

/// How [`is_hyperbolic`] treats the coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Coefficients are taken at face value, rationally.
    Exact,
    /// Each coefficient is uncertain by this relative amount; the verdict
    /// must agree at every corner of the coefficient box.
    Numeric(f64),
}

/// All roots real. Numeric mode reports [`Error::Indeterminate`] when the
/// verdict changes inside the coefficient box.
pub fn is_hyperbolic(p: &Polynomial, mode: Mode) -> Result<bool> {
    let coeffs = p.to_rationals();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let tol = match mode {
        Mode::Exact => return all_roots_real(&coeffs),
        Mode::Numeric(t) => Rational::from_f64(t.abs())
            .ok_or_else(|| Error::InvalidArgument(format!("bad tolerance {t}")))?,
    };
    let centre = all_roots_real(&coeffs)?;
    let n = coeffs.len();
    if n > 16 {
        return Err(Error::InvalidArgument("numeric mode supports degree at most 15".into()));
    }
    for corner in 0u32..(1 << n) {
        let perturbed: Vec<Rational> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let shift = Rational::from(c * &tol);
                if corner >> i & 1 == 1 {
                    Rational::from(c + &shift)
                } else {
                    Rational::from(c - &shift)
                }
            })
            .collect();
        if perturbed.last().is_some_and(|c| c.is_zero()) || all_roots_real(&perturbed)? != centre {
            return Err(Error::Indeterminate);
        }
    }
    Ok(centre)
}

fn verdict(values: &Values, d: usize, n: usize) -> Result<bool> {
    let j = jensen_poly(values, d, n)?;
    match values.relative_error() {
        None => is_hyperbolic(&j, Mode::Exact),
        Some(e) => is_hyperbolic(&j, Mode::Numeric(e.to_f64().max(1e-300) * 4.0)),
    }
}

/// Smallest n0 <= horizon with J^{d,n} hyperbolic for every n in
/// [n0, horizon], or `None` when J^{d,horizon} itself is not.
///
/// This is an empirical proxy for the eventual threshold, not a proof of it.
pub fn hyperbolicity_threshold(alpha: &AlphaValue, d: usize, horizon: usize, prec: Precision) -> Result<Option<usize>> {
    if horizon <= d {
        return Err(Error::InvalidArgument(format!("horizon {horizon} must exceed d = {d}")));
    }
    let values = Values::for_alpha(alpha, 0, horizon + d, prec)?;
    for n in (0..=horizon).rev() {
        if !verdict(&values, d, n)? {
            return Ok(if n == horizon { None } else { Some(n + 1) });
        }
    }
    Ok(Some(0))
}

/// One row of a hyperbolicity scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub d: usize,
    pub hyperbolic: bool,
    /// max |Ĵ - H_d| when the renormalization is defined.
    pub gap_to_hermite: Option<f64>,
}

/// Verdicts for n in `from..=to`.
pub fn scan(alpha: &AlphaValue, d: usize, from: usize, to: usize, prec: Precision) -> Result<Vec<ScanRow>> {
    let values = Values::for_alpha(alpha, 0, to + d, prec)?;
    let h = hermite(d);
    (from..=to)
        .map(|n| {
            let gap = match renorm_params(alpha, n as u64, prec) {
                Ok(params) => Some(renormalize(&values, &params, d, n, prec)?.max_distance(&h, 64).to_f64()),
                Err(Error::RadicandNonPositive(_)) => None,
                Err(e) => return Err(e),
            };
            Ok(ScanRow {
                n,
                d,
                hyperbolic: verdict(&values, d, n)?,
                gap_to_hermite: gap,
            })
        })
        .collect()
}

/// CSV with header `n,d,hyperbolic,gap_to_hermite`.
pub fn scan_to_csv(rows: &[ScanRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// J, Ĵ and the verdict for one (alpha, d, n).
#[derive(Debug, Clone, Serialize)]
pub struct JensenReport {
    pub alpha: AlphaValue,
    pub d: usize,
    pub n: usize,
    pub raw: Polynomial,
    pub renormalized: Option<Polynomial>,
    pub hyperbolic: bool,
    pub hermite_distance: Option<String>,
}

impl JensenReport {
    pub fn new(alpha: &AlphaValue, d: usize, n: usize, prec: Precision) -> Result<Self> {
        let values = Values::for_alpha(alpha, n, d, prec)?;
        let raw = jensen_poly(&values, d, n)?;
        let hyperbolic = verdict(&values, d, n)?;
        let renormalized = match renorm_params(alpha, n as u64, prec) {
            Ok(params) => Some(renormalize(&values, &params, d, n, prec)?),
            Err(Error::RadicandNonPositive(_)) => None,
            Err(e) => return Err(e),
        };
        let hermite_distance = renormalized
            .as_ref()
            .map(|r| crate::numkernel::format::to_significant(&r.max_distance(&hermite(d), prec.bits()), 12));
        Ok(JensenReport {
            alpha: alpha.clone(),
            d,
            n,
            raw,
            renormalized,
            hyperbolic,
            hermite_distance,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(upto: usize) -> Values {
        Values::from_table(&oracle::coeffs(&AlphaValue::integer(1).unwrap(), upto, Precision::default()))
    }

    #[test]
    fn jensen_small() {
        let j = jensen_poly(&p1(5), 2, 0).unwrap();
        assert_eq!(j, Polynomial::from_integers(&[1, 2, 2]));
        assert!(!is_hyperbolic(&j, Mode::Exact).unwrap());
        // p(1..3) = 1, 2, 3 gives 2^2 >= 1 * 3
        assert!(is_hyperbolic(&jensen_poly(&p1(5), 2, 1).unwrap(), Mode::Exact).unwrap());
        assert!(matches!(
            jensen_poly(&p1(5), 3, 4),
            Err(Error::InsufficientValues { needed: 7, available: 5 })
        ));
    }

    #[test]
    fn hermite_polynomials() {
        assert_eq!(hermite(0), Polynomial::from_integers(&[1]));
        assert_eq!(hermite(1), Polynomial::from_integers(&[0, 1]));
        assert_eq!(hermite(2), Polynomial::from_integers(&[-2, 0, 1]));
        assert_eq!(hermite(3), Polynomial::from_integers(&[0, -6, 0, 1]));
        assert_eq!(hermite(4), Polynomial::from_integers(&[12, 0, -12, 0, 1]));
        for d in 0..8 {
            assert!(is_hyperbolic(&hermite(d), Mode::Exact).unwrap());
        }
    }

    #[test]
    fn numeric_mode() {
        let p = Polynomial::from_integers(&[-2, 0, 1]);
        assert!(is_hyperbolic(&p, Mode::Numeric(1e-6)).unwrap());
        let p = Polynomial::from_integers(&[1, 0, 1]);
        assert!(!is_hyperbolic(&p, Mode::Numeric(1e-6)).unwrap());
        // double root: any widening makes the verdict ambiguous
        let p = Polynomial::from_integers(&[1, -2, 1]);
        assert!(is_hyperbolic(&p, Mode::Exact).unwrap());
        assert!(matches!(is_hyperbolic(&p, Mode::Numeric(1e-9)), Err(Error::Indeterminate)));
    }

    #[test]
    fn log_concavity_threshold() {
        let alpha = AlphaValue::integer(1).unwrap();
        assert_eq!(hyperbolicity_threshold(&alpha, 2, 200, Precision::default()).unwrap(), Some(25));
        assert_eq!(hyperbolicity_threshold(&alpha, 1, 100, Precision::default()).unwrap(), Some(0));
    }

    #[test]
    fn cubic_thresholds() {
        let p = Precision::default();
        let one = AlphaValue::integer(1).unwrap();
        assert_eq!(hyperbolicity_threshold(&one, 3, 200, p).unwrap(), Some(94));
        let seventh = AlphaValue::parse("51/7").unwrap();
        assert_eq!(hyperbolicity_threshold(&seventh, 3, 400, p).unwrap(), Some(0));
    }

    #[test]
    fn renorm_parameters() {
        let alpha = AlphaValue::parse("sqrt(3)").unwrap();
        let p = Precision::default();
        assert!(matches!(renorm_params(&alpha, 1, p), Err(Error::RadicandNonPositive(1))));
        let a = renorm_params(&alpha, 1000, p).unwrap();
        let b = renorm_params(&alpha, 2000, p).unwrap();
        assert!(b.a < a.a && b.delta < a.delta && b.delta > 0);
    }

    #[test]
    fn report_json() {
        let alpha = AlphaValue::integer(1).unwrap();
        let r = JensenReport::new(&alpha, 2, 30, Precision::default()).unwrap();
        assert!(r.hyperbolic);
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["d"], 2);
        assert_eq!(v["raw"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn scan_csv() {
        let alpha = AlphaValue::integer(1).unwrap();
        let rows = scan(&alpha, 2, 20, 30, Precision::default()).unwrap();
        assert!(!rows.iter().find(|r| r.n == 24).unwrap().hyperbolic);
        assert!(rows.iter().filter(|r| r.n >= 25).all(|r| r.hyperbolic));
        let csv = scan_to_csv(&rows).unwrap();
        assert!(csv.starts_with("n,d,hyperbolic,gap_to_hermite\n"));
    }
}
