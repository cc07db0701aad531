use rug::Float;

use crate::error::{Error, Result};

/// Bits per decimal digit, rounded up a little.
const BITS_PER_DIGIT: f64 = 3.321_928_094_887_362;
const GUARD_BITS: u32 = 16;

/// Working precision for every high-precision evaluation in the crate.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PrecisionConfig {
    working_digits: u32,
    series_tolerance: f64,
    quadrature_tolerance: f64,
}

impl PrecisionConfig {
    pub fn new(working_digits: u32, series_tolerance: f64, quadrature_tolerance: f64) -> Result<Self> {
        if working_digits < 15 {
            return Err(Error::InvalidConfig(format!(
                "working_digits must be >= 15, got {working_digits}"
            )));
        }
        if !(series_tolerance > 0.0 && series_tolerance < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "series_tolerance must lie in (0, 1), got {series_tolerance}"
            )));
        }
        if !(quadrature_tolerance > 0.0 && quadrature_tolerance < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "quadrature_tolerance must lie in (0, 1), got {quadrature_tolerance}"
            )));
        }
        Ok(Self {
            working_digits,
            series_tolerance,
            quadrature_tolerance,
        })
    }

    /// Series tolerance tied to the digit count: `10^-digits`.
    pub fn with_digits(working_digits: u32) -> Result<Self> {
        Self::new(working_digits, 10f64.powi(-(working_digits as i32)), 1e-8)
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn series_tolerance(&self) -> f64 {
        self.series_tolerance
    }

    pub fn quadrature_tolerance(&self) -> f64 {
        self.quadrature_tolerance
    }

    /// MPFR mantissa size for the configured digit count.
    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * BITS_PER_DIGIT).ceil() as u32 + GUARD_BITS
    }

    /// Precision used inside lattice sums and recurrences, a few words above `bits()`.
    pub fn internal_bits(&self) -> u32 {
        self.bits() + 32
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.bits(), v)
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            working_digits: 50,
            series_tolerance: 1e-50,
            quadrature_tolerance: 1e-8,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_digit_counts() {
        assert!(PrecisionConfig::new(14, 1e-10, 1e-6).is_err());
        assert!(PrecisionConfig::new(15, 1e-10, 1e-6).is_ok());
    }

    #[test]
    fn rejects_out_of_range_tolerances() {
        assert!(PrecisionConfig::new(30, 0.0, 1e-6).is_err());
        assert!(PrecisionConfig::new(30, 1.0, 1e-6).is_err());
        assert!(PrecisionConfig::new(30, 1e-20, 2.0).is_err());
    }

    #[test]
    fn default_is_fifty_digits() {
        let cfg = PrecisionConfig::default();
        assert_eq!(cfg.working_digits(), 50);
        assert!(cfg.bits() >= 167);
    }
}
