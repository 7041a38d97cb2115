//! Numerical check of the transformation law
//! `P(x)^a = e^{pi i a s(h,k)} (z/k)^{a/2} exp((a pi / 12k)(k/z - z/k)) P(x')^a`
//! with `x = exp((2 pi / k)(i h - z/k))` and `x' = exp((2 pi / k)(i H - k/z))`.

use rug::Float;

use super::dedekind::{dedekind_sum, inverse_neg};
use crate::error::{Error, Result};
use crate::numkernel::{pi, AlphaValue, BigComplex, Precision};
use crate::oracle::{eval_p_alpha, MAX_MODULUS};

/// The points x and x' for (h, k, z).
pub fn transformation_points(h: i64, k: i64, z: &BigComplex, prec: Precision) -> Result<(BigComplex, BigComplex)> {
    let hh = inverse_neg(h, k)?;
    let bits = prec.bits() + 32;
    let two_pi_k = Float::with_val(bits, pi(bits) * 2u32) / k;
    let zk = BigComplex::with_val(bits, &z.re / k, &z.im / k);
    let x_exp = &BigComplex::with_val(bits, 0, h) - &zk;
    let kz = BigComplex::with_val(bits, k, 0).div(z);
    let xp_exp = &BigComplex::with_val(bits, 0, hh) - &kz;
    Ok((x_exp.scale(&two_pi_k).exp(), xp_exp.scale(&two_pi_k).exp()))
}

/// `|LHS - RHS| / max(1, |LHS|)` with both sides evaluated as products of
/// `factors` terms.
pub fn functional_equation_residual(
    alpha: &AlphaValue,
    h: i64,
    k: i64,
    z: &BigComplex,
    factors: usize,
    prec: Precision,
) -> Result<Float> {
    if z.re <= 0 {
        return Err(Error::InvalidArgument("Re z must be positive".into()));
    }
    let s = dedekind_sum(h, k)?;
    let (x, xp) = transformation_points(h, k, z, prec)?;
    for point in [&x, &xp] {
        let r = point.abs();
        if r > MAX_MODULUS {
            return Err(Error::OutsideDisk(r.to_string_radix(10, Some(12))));
        }
    }
    let bits = prec.bits() + 32;
    let inner = prec.with_extra_guard(10);
    let a = alpha.value_bits(bits);
    let pi = pi(bits);

    let lhs = eval_p_alpha(&x, alpha, factors, inner)?;
    let rhs_p = eval_p_alpha(&xp, alpha, factors, inner)?;

    let phase = BigComplex::cis(&(Float::with_val(bits, &pi * &a) * &s));
    let zk = BigComplex::with_val(bits, &z.re / k, &z.im / k);
    let power = zk.powf(&Float::with_val(bits, &a / 2u32));
    let kz = BigComplex::with_val(bits, k, 0).div(z);
    let coef = Float::with_val(bits, &a * &pi) / (12 * k);
    let expo = (&kz - &zk).scale(&coef).exp();
    let rhs = &(&(&phase * &power) * &expo) * &rhs_p;

    let diff = (&lhs - &rhs).abs();
    let scale = lhs.abs().max(&Float::with_val(bits, 1u32));
    Ok(Float::with_val(prec.bits(), diff / scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(60).unwrap()
    }

    #[test]
    fn symmetric_point() {
        let alpha = AlphaValue::integer(1).unwrap();
        let z = BigComplex::with_val(p().bits(), 1, 0);
        let r = functional_equation_residual(&alpha, 0, 1, &z, 400, p()).unwrap();
        assert!(r < 1e-30, "{r}");
    }

    #[test]
    fn irrational_and_large_alpha() {
        let bits = p().bits();
        let root3 = AlphaValue::parse("sqrt(3)").unwrap();
        let z = BigComplex::with_val(bits, 0.8, 0.1);
        assert!(functional_equation_residual(&root3, 1, 2, &z, 600, p()).unwrap() < 1e-25);
        let five = AlphaValue::integer(5).unwrap();
        let z = BigComplex::with_val(bits, 1.2, 0);
        assert!(functional_equation_residual(&five, 2, 5, &z, 600, p()).unwrap() < 1e-25);
    }

    #[test]
    fn rejects_points_near_the_circle() {
        let alpha = AlphaValue::integer(1).unwrap();
        let z = BigComplex::with_val(p().bits(), 0.0001, 0);
        assert!(matches!(
            functional_equation_residual(&alpha, 0, 1, &z, 100, p()),
            Err(Error::OutsideDisk(_))
        ));
        assert!(functional_equation_residual(&alpha, 2, 4, &BigComplex::one(64), 10, p()).is_err());
    }
}
