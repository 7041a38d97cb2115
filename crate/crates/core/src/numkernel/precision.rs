use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision in decimal digits plus guard digits carried internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    decimal_digits: u32,
    guard_digits: u32,
}

impl Precision {
    pub const MIN_DIGITS: u32 = 30;
    pub const MIN_GUARD: u32 = 10;
    pub const DEFAULT_DIGITS: u32 = 60;

    pub fn new(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        if decimal_digits < Self::MIN_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "decimal_digits = {decimal_digits} < {}",
                Self::MIN_DIGITS
            )));
        }
        if guard_digits < Self::MIN_GUARD {
            return Err(Error::InvalidPrecision(format!(
                "guard_digits = {guard_digits} < {}",
                Self::MIN_GUARD
            )));
        }
        Ok(Precision {
            decimal_digits,
            guard_digits,
        })
    }

    /// `digits` working digits with the minimum guard.
    pub fn digits(decimal_digits: u32) -> Result<Self> {
        Self::new(decimal_digits, Self::MIN_GUARD)
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Mantissa bits covering working plus guard digits.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.decimal_digits + self.guard_digits)
    }

    /// Same guard, more working digits.
    pub fn with_digits(&self, decimal_digits: u32) -> Self {
        Precision {
            decimal_digits: decimal_digits.max(Self::MIN_DIGITS),
            guard_digits: self.guard_digits,
        }
    }

    /// Extra guard digits on top of the current ones.
    pub fn with_extra_guard(&self, extra: u32) -> Self {
        Precision {
            decimal_digits: self.decimal_digits,
            guard_digits: self.guard_digits + extra,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            decimal_digits: Self::DEFAULT_DIGITS,
            guard_digits: Self::MIN_GUARD,
        }
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision() {
        assert!(Precision::new(29, 10).is_err());
        assert!(Precision::new(30, 9).is_err());
        assert!(Precision::new(30, 10).is_ok());
    }

    #[test]
    fn bits_cover_digits() {
        let p = Precision::default();
        assert!(f64::from(p.bits()) >= 70.0 * LOG2_10);
    }
}
