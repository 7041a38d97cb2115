//! Complex numbers over MPFR floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

/// A complex number `re + i im`. Both parts share one precision.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn with_val<R, I>(prec: u32, re: R, im: I) -> Self
    where
        Float: rug::Assign<R> + rug::Assign<I>,
    {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::with_val(prec, 0, 0)
    }

    pub fn one(prec: u32) -> Self {
        Self::with_val(prec, 1, 0)
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// `exp(i theta)`.
    pub fn cis(theta: &Float) -> Self {
        let p = theta.prec();
        BigComplex {
            re: Float::with_val(p, theta.cos_ref()),
            im: Float::with_val(p, theta.sin_ref()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let norm = Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref());
        BigComplex {
            re: Float::with_val(p, &self.re / &norm),
            im: -Float::with_val(p, &self.im / &norm),
        }
    }

    pub fn div(&self, other: &BigComplex) -> Self {
        self * &other.recip()
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let modulus = Float::with_val(p, self.re.exp_ref());
        BigComplex::cis(&Float::with_val(p, &self.im)).scale(&modulus)
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, self.abs().ln_ref()),
            im: self.arg(),
        }
    }

    /// Principal branch of `self^s` for real `s`.
    pub fn powf(&self, s: &Float) -> Self {
        if self.is_zero() {
            return BigComplex::zero(self.prec());
        }
        self.ln().scale(s).exp()
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        BigComplex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{} {} {}i", self.re, sign, self.im.clone().abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn cis_has_unit_modulus() {
        for t in [-7.5, -1.0, 0.0, 0.3, 2.0, 100.0] {
            let z = BigComplex::cis(&Float::with_val(P, t));
            let err = Float::with_val(P, z.abs() - 1u32).abs();
            assert!(err < Float::with_val(P, 1e-55));
        }
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = BigComplex::with_val(P, -0.7, 1.3);
        let back = z.ln().exp();
        let err = (&back - &z).abs();
        assert!(err < Float::with_val(P, 1e-55));
    }

    #[test]
    fn principal_log_branch() {
        let z = BigComplex::with_val(P, -1, 0);
        let l = z.ln();
        let pi = Float::with_val(P, rug::float::Constant::Pi);
        assert!(Float::with_val(P, &l.im - &pi).abs() < 1e-55);
    }

    #[test]
    fn division() {
        let a = BigComplex::with_val(P, 3, 4);
        let b = BigComplex::with_val(P, 1, -2);
        let q = a.div(&b);
        // (3+4i)/(1-2i) = (3+4i)(1+2i)/5 = (-5+10i)/5
        assert!(Float::with_val(P, &q.re + 1u32).abs() < 1e-55);
        assert!(Float::with_val(P, &q.im - 2u32).abs() < 1e-55);
    }
}
