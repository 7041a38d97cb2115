//! Fractional partition functions p_alpha(n), the coefficients of
//! `prod_{k>=1} (1 - x^k)^(-alpha)`.
//!
//! Three independent routes to the same numbers:
//!
//! - [`oracle`]: the power-series coefficients by the divisor-sum recurrence,
//!   exact rationals when alpha is rational.
//! - [`circle`]: the truncated Rademacher-type series with Dedekind and
//!   alpha-Kloosterman sums, a certified tail bound, and exact rational
//!   recovery by rounding.
//! - [`jensen`]: Jensen polynomials of the sequence, their renormalization
//!   towards Hermite polynomials, and exact real-rootedness tests.
//!
//! [`tables`] recomputes the published numerical tables and diffs them
//! against embedded golden data.

pub mod circle;
pub mod error;
pub mod jensen;
pub mod numkernel;
pub mod oracle;
pub mod tables;

pub use error::{Error, Result};
pub use numkernel::{AlphaValue, BigComplex, BigRational, BigReal, Precision};
