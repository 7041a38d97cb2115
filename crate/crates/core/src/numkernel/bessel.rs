//! Modified Bessel function of the first kind, real order nu > 0.
//!
//! Only the ascending series
//!
//! ```text
//! I_nu(z) = (z/2)^nu * sum_{k>=0} (z/2)^{2k} / (k! Gamma(nu + k + 1))
//! ```
//!
//! is used. All terms are positive for z > 0, so the sum loses no digits to
//! cancellation; the only cost of a large argument is the number of terms
//! (roughly e*z/2 before the tail drops below the stopping threshold).

use rug::ops::Pow;
use rug::Float;

use super::gamma::gamma_bits;
use super::Precision;
use crate::error::{Error, Result};

/// I_nu with the order-dependent prefactor 1/Gamma(nu+1) computed once.
#[derive(Debug, Clone)]
pub struct BesselI {
    nu: Float,
    inv_gamma: Float,
    prec: Precision,
}

impl BesselI {
    pub fn new(nu: &Float, prec: Precision) -> Result<Self> {
        if !nu.is_finite() || *nu <= 0 {
            return Err(Error::NonPositiveArgument(format!("bessel order {nu}")));
        }
        let bits = prec.bits() + 32;
        let nu = Float::with_val(bits, nu);
        let nu1 = Float::with_val(bits, &nu + 1u32);
        let inv_gamma = gamma_bits(&nu1, bits).recip();
        Ok(BesselI {
            nu,
            inv_gamma,
            prec,
        })
    }

    pub fn order(&self) -> &Float {
        &self.nu
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// I_nu(z) for z >= 0.
    pub fn eval(&self, z: &Float) -> Result<Float> {
        if z.is_nan() || *z < 0 {
            return Err(Error::NonPositiveArgument(format!("bessel argument {z}")));
        }
        let out_bits = self.prec.bits();
        if z.is_zero() {
            return Ok(Float::new(out_bits));
        }
        // extra bits for the rounding of ~e*z/2 accumulated additions
        let extra = (z.to_f64().max(1.0).log2().ceil() as u32) + 40;
        let bits = out_bits + extra;
        let half_z = Float::with_val(bits, z / 2u32);
        let quarter_z2 = Float::with_val(bits, half_z.square_ref());
        let stop_digits = self.prec.decimal_digits() + self.prec.guard_digits();
        let eps = Float::with_val(bits, 10u32).pow(-(stop_digits as i32));

        let nu = Float::with_val(bits, &self.nu);
        let mut term = Float::with_val(bits, 1) * Float::with_val(bits, &self.inv_gamma);
        let mut sum = Float::new(bits);
        let mut k: u64 = 0;
        loop {
            sum += &term;
            // ratio t_{k+1}/t_k = (z/2)^2 / ((k+1)(nu+k+1))
            let denom = Float::with_val(bits, &nu + (k + 1)) * (k + 1);
            let decreasing = denom > quarter_z2;
            term *= &quarter_z2;
            term /= &denom;
            k += 1;
            if decreasing && term < Float::with_val(bits, &sum * &eps) {
                break;
            }
        }
        let scale = Float::with_val(bits, half_z.pow(&nu));
        Ok(Float::with_val(out_bits, sum * scale))
    }
}

/// I_nu(z) for nu > 0, z >= 0.
pub fn bessel_i(nu: &Float, z: &Float, prec: Precision) -> Result<Float> {
    BesselI::new(nu, prec)?.eval(z)
}
