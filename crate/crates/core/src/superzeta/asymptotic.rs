use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// a z^mu in the expansion of log Delta_f.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraicTerm {
    pub coeff: f64,
    pub exponent: f64,
}

/// Remainder of the expansion after the main part and the first `n`
/// algebraic terms have been removed.
pub trait Remainder: Send + Sync {
    fn value(&self, n: usize, z: Complex64) -> Result<Complex64>;
    fn third_derivative(&self, n: usize, z: Complex64) -> Result<Complex64>;
    /// Exponent mu with |h_n(z)| = O(|z|^mu).
    fn decay(&self, n: usize) -> f64;
}

/// Identically zero remainder.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullRemainder;

impl Remainder for NullRemainder {
    fn value(&self, _: usize, _: Complex64) -> Result<Complex64> {
        Ok(Complex64::new(0.0, 0.0))
    }
    fn third_derivative(&self, _: usize, _: Complex64) -> Result<Complex64> {
        Ok(Complex64::new(0.0, 0.0))
    }
    fn decay(&self, _: usize) -> f64 {
        f64::NEG_INFINITY
    }
}

/// log Delta_f(z) = a2 z^2 (log z - 3/2) + b2 z^2 + a1 z (log z - 1) + b1 z
///   + a0 log z + b0 + sum_{k<n} a_k z^{mu_k} + h_n(z).
#[derive(Clone)]
pub struct AsymptoticData {
    pub a2_tilde: f64,
    pub b2: f64,
    pub a1_tilde: f64,
    pub b1: f64,
    pub a0_tilde: f64,
    pub b0: f64,
    pub terms: Vec<AlgebraicTerm>,
    pub remainder: Arc<dyn Remainder>,
    /// Expansion holds on |arg z| < sector_angle.
    pub sector_angle: f64,
}

impl fmt::Debug for AsymptoticData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AsymptoticData")
            .field("a2_tilde", &self.a2_tilde)
            .field("b2", &self.b2)
            .field("a1_tilde", &self.a1_tilde)
            .field("b1", &self.b1)
            .field("a0_tilde", &self.a0_tilde)
            .field("b0", &self.b0)
            .field("terms", &self.terms.len())
            .field("sector_angle", &self.sector_angle)
            .finish()
    }
}

impl AsymptoticData {
    /// All coefficients zero, remainder zero.
    pub fn zero() -> Self {
        AsymptoticData {
            a2_tilde: 0.0,
            b2: 0.0,
            a1_tilde: 0.0,
            b1: 0.0,
            a0_tilde: 0.0,
            b0: 0.0,
            terms: Vec::new(),
            remainder: Arc::new(NullRemainder),
            sector_angle: std::f64::consts::PI * 0.99,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let coeffs = [
            self.a2_tilde,
            self.b2,
            self.a1_tilde,
            self.b1,
            self.a0_tilde,
            self.b0,
        ];
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Config("non-finite asymptotic coefficient".into()));
        }
        if !(self.sector_angle > 0.0 && self.sector_angle < std::f64::consts::PI) {
            return Err(Error::Config(format!(
                "sector angle {} outside (0, pi)",
                self.sector_angle
            )));
        }
        if let Some(t) = self.terms.first() {
            if !(t.exponent < 1.0) {
                return Err(Error::Config("first algebraic exponent must be < 1".into()));
            }
        }
        for w in self.terms.windows(2) {
            if !(w[1].exponent < w[0].exponent) {
                return Err(Error::Config(
                    "algebraic exponents must strictly decrease".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn check_sector(&self, z: Complex64) -> Result<()> {
        if z.norm() == 0.0 || !(z.arg().abs() < self.sector_angle) {
            return Err(Error::Sector(format!(
                "|arg {z}| must be below {}",
                self.sector_angle
            )));
        }
        Ok(())
    }

    /// Number of algebraic terms handled explicitly for a given Re s: the
    /// smallest n whose remainder decays like z^mu with mu < Re s - 1.5.
    pub fn split_index(&self, s_re: f64) -> Result<usize> {
        (0..=self.terms.len())
            .find(|&n| self.remainder.decay(n) < s_re - 1.5)
            .ok_or_else(|| {
                Error::InsufficientData(format!(
                    "no remainder with decay below Re s - 1.5 = {}",
                    s_re - 1.5
                ))
            })
    }

    /// b2 z^2 + b1 z + b0.
    pub fn polynomial_part(&self, z: Complex64) -> Complex64 {
        z * z * self.b2 + z * self.b1 + self.b0
    }

    /// The log-carrying main part without the b-polynomial.
    pub fn log_part(&self, z: Complex64) -> Complex64 {
        let lz = z.ln();
        z * z * (lz - 1.5) * self.a2_tilde + z * (lz - 1.0) * self.a1_tilde + lz * self.a0_tilde
    }

    /// log Delta_f reconstructed from the expansion with `n` explicit terms.
    pub fn log_delta(&self, z: Complex64, n: usize) -> Result<Complex64> {
        let mut v = self.log_part(z) + self.polynomial_part(z);
        for t in &self.terms[..n.min(self.terms.len())] {
            v += z.powf(t.exponent) * t.coeff;
        }
        Ok(v + self.remainder.value(n, z)?)
    }

    /// Samples |h_n(z)| |z|^{-mu_n} along rays and returns the largest ratio
    /// seen; bounded output confirms the declared decay.
    pub fn decay_constant(&self, n: usize, radii: &[f64], angles: &[f64]) -> Result<f64> {
        let mu = self.remainder.decay(n);
        let mut worst: f64 = 0.0;
        for &r in radii {
            for &a in angles {
                let z = Complex64::from_polar(r, a);
                let h = self.remainder.value(n, z)?;
                worst = worst.max(h.norm() / r.powf(mu));
                let h3 = self.remainder.third_derivative(n, z)?;
                worst = worst.max(h3.norm() / r.powf(mu - 3.0));
            }
        }
        Ok(worst)
    }
}
