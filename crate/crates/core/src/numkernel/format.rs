//! Decimal rendering of floats and rationals.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Round half away from zero to `decimals` places and render as plain
/// decimal text.
pub fn rational_to_fixed(x: &Rational, decimals: usize) -> String {
    let scale = Integer::from(10u32).pow(decimals as u32);
    let scaled = Rational::from(x * &scale);
    let neg = scaled < 0;
    let abs = scaled.abs();
    // half away from zero: floor(|x| + 1/2)
    let rounded = (abs + Rational::from((1, 2))).floor();
    let digits = rounded.numer().to_string();
    let body = if decimals == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = decimals + 1);
        let (int, frac) = padded.split_at(padded.len() - decimals);
        format!("{int}.{frac}")
    };
    if neg && rounded.numer() != &0 {
        format!("-{body}")
    } else {
        body
    }
}

/// Plain decimal rendering of a float rounded to `decimals` places.
pub fn to_fixed(x: &Float, decimals: usize) -> String {
    match x.to_rational() {
        Some(r) => rational_to_fixed(&r, decimals),
        None => x.to_string(),
    }
}

/// Plain decimal rendering with `sig` significant digits.
pub fn to_significant(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let exponent = Float::with_val(64, x.abs_ref()).log10().to_f64().floor() as i64;
    let decimals = (sig as i64 - 1 - exponent).max(0) as usize;
    to_fixed(x, decimals)
}

/// Scientific rendering with `sig` significant digits, e.g. `1.05e-81`.
pub fn to_scientific(x: &Float, sig: usize) -> String {
    x.to_string_radix(10, Some(sig.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_away_from_zero() {
        assert_eq!(rational_to_fixed(&Rational::from((5, 2)), 0), "3");
        assert_eq!(rational_to_fixed(&Rational::from((-5, 2)), 0), "-3");
        assert_eq!(rational_to_fixed(&Rational::from((1, 8)), 2), "0.13");
        assert_eq!(rational_to_fixed(&Rational::from((-1, 1000)), 2), "0.00");
        assert_eq!(rational_to_fixed(&Rational::from((171031, 100)), 1), "1710.3");
        assert_eq!(rational_to_fixed(&Rational::from((7, 1)), 3), "7.000");
    }

    #[test]
    fn significant_digits() {
        let x = Float::with_val(128, 1709.0712);
        assert_eq!(to_significant(&x, 6), "1709.07");
        let y = Float::with_val(128, 0.0939817123);
        assert_eq!(to_significant(&y, 6), "0.0939817");
        let z = Float::with_val(128, -2.038281);
        assert_eq!(to_significant(&z, 6), "-2.03828");
    }

    #[test]
    fn scientific() {
        assert_eq!(to_scientific(&Float::with_val(64, 1.0e-81), 3), "1.00e-81");
        assert_eq!(to_scientific(&Float::with_val(64, -2500.9), 2), "-2.5e3");
    }
}
