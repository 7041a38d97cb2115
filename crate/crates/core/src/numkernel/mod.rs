//! Arbitrary-precision numeric kernel: precision policy, complex arithmetic,
//! Gamma, real-order modified Bessel I, and the alpha expression parser.
//!
//! Real numbers are MPFR floats ([`rug::Float`]); exact rationals are GMP
//! rationals ([`rug::Rational`]).

mod alpha;
mod bessel;
mod complex;
pub mod format;
mod gamma;
mod precision;

pub use alpha::{AlphaValue, RealAlpha};
pub use bessel::{bessel_i, BesselI};
pub use complex::BigComplex;
pub use gamma::gamma;
pub use precision::Precision;


pub type BigReal = rug::Float;
pub type BigRational = rug::Rational;

use rug::float::Constant;
use rug::Float;

pub(crate) fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}
