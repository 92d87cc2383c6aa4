use serde::{Deserialize, Serialize};

use super::bernoulli::BERNOULLI_MAX;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorkingPrecision {
    Double,
    DoubleDouble,
}

impl WorkingPrecision {
    pub fn bits(self) -> u32 {
        match self {
            WorkingPrecision::Double => 53,
            WorkingPrecision::DoubleDouble => 106,
        }
    }

    pub fn epsilon(self) -> f64 {
        2f64.powi(1 - self.bits() as i32)
    }
}

/// Evaluation parameters shared by the special functions.
///
/// `series_order` is the number of Bernoulli terms kept in asymptotic series,
/// `shift_threshold` the real part above which asymptotics are trusted.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub precision: WorkingPrecision,
    pub tolerance: f64,
    pub series_order: usize,
    pub shift_threshold: f64,
}

impl PrecisionPolicy {
    pub fn double() -> Self {
        PrecisionPolicy {
            precision: WorkingPrecision::Double,
            tolerance: 1e-14,
            series_order: 8,
            shift_threshold: 20.0,
        }
    }

    pub fn double_double() -> Self {
        PrecisionPolicy {
            precision: WorkingPrecision::DoubleDouble,
            tolerance: 1e-30,
            series_order: 16,
            shift_threshold: 30.0,
        }
    }

    pub fn for_bits(bits: u32) -> Self {
        if bits > 53 {
            Self::double_double()
        } else {
            Self::double()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let eps = self.precision.epsilon();
        if !(self.tolerance >= 10.0 * eps) {
            return Err(Error::Config(format!(
                "tolerance {:e} below 10x working epsilon {:e}",
                self.tolerance, eps
            )));
        }
        if self.series_order < 2 || 2 * self.series_order + 2 > BERNOULLI_MAX {
            return Err(Error::Config(format!(
                "series order {} outside [2, {}]",
                self.series_order,
                BERNOULLI_MAX / 2 - 1
            )));
        }
        if !(self.shift_threshold >= 5.0 && self.shift_threshold.is_finite()) {
            return Err(Error::Config(format!(
                "shift threshold {} must be finite and >= 5",
                self.shift_threshold
            )));
        }
        Ok(())
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::double()
    }
}
