//! Multiplicities of zeros of the complete zetas at the special points:
//! s = 1/2, the small eigenvalues, and the residual points 1 - sigma_i.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SurfaceConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorLedger {
    pub d_quarter: u32,
    pub tr_phi_half: f64,
    pub cusps: u32,
    /// Discrete eigenvalues lambda < 1/4 with multiplicities, including 0.
    pub eigenvalues: Vec<(f64, u32)>,
    /// Order of phi at points s: positive for poles, negative for zeros.
    pub phi_orders: Vec<(Complex64, i64)>,
    /// Multiplicity of cusp forms at eigenvalue 1/4; may differ from
    /// `d_quarter` when residual eigenfunctions sit there too.
    pub cusp_forms_quarter: Option<u32>,
}

const MATCH_TOL: f64 = 1e-12;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= MATCH_TOL * (1.0 + a.norm())
}

impl DivisorLedger {
    /// Ledger of a configuration: lambda = 0 once, the listed small
    /// eigenvalues, poles of phi at sigma_i and zeros at 1 - sigma_i
    /// (phi(s) phi(1 - s) = 1).
    pub fn from_config(config: &SurfaceConfig) -> Self {
        let mut eigenvalues = vec![(0.0, 1)];
        for e in &config.eigenvalues {
            match eigenvalues
                .iter_mut()
                .find(|x| (x.0 - e.lambda).abs() <= MATCH_TOL)
            {
                Some(x) => x.1 += e.mult,
                None => eigenvalues.push((e.lambda, e.mult)),
            }
        }
        let mut phi_orders = Vec::new();
        for p in &config.poles {
            phi_orders.push((Complex64::new(p.sigma, 0.0), p.mult as i64));
            phi_orders.push((Complex64::new(1.0 - p.sigma, 0.0), -(p.mult as i64)));
        }
        DivisorLedger {
            d_quarter: config.d_quarter,
            tr_phi_half: config.tr_phi_half,
            cusps: config.cusps,
            eigenvalues,
            phi_orders,
            cusp_forms_quarter: config.cusp_forms_quarter,
        }
    }

    fn eigen_multiplicity(&self, lambda: Complex64) -> Result<u32> {
        let hit: u32 = self
            .eigenvalues
            .iter()
            .filter(|e| close(lambda, Complex64::new(e.0, 0.0)))
            .map(|e| e.1)
            .sum();
        if hit == 0 && lambda.im == 0.0 && lambda.re >= 0.25 {
            return Err(Error::InsufficientData(format!(
                "the ledger records no spectrum at lambda = {} >= 1/4",
                lambda.re
            )));
        }
        Ok(hit)
    }

    fn phi_order(&self, s: Complex64) -> i64 {
        self.phi_orders
            .iter()
            .filter(|p| close(s, p.0))
            .map(|p| p.1)
            .sum()
    }

    /// Multiplicity 2 d_{1/4} + (c + tr Phi(1/2))/2 of the zero at s = 1/2.
    pub fn multiplicity_at_half(&self) -> Result<f64> {
        let a = 2.0 * self.d_quarter as f64 + 0.5 * (self.cusps as f64 + self.tr_phi_half);
        if a < -MATCH_TOL {
            return Err(Error::Negativity(format!(
                "2 d + (c + tr Phi(1/2))/2 = {a} with d = {}, c = {}, tr = {}",
                self.d_quarter, self.cusps, self.tr_phi_half
            )));
        }
        Ok(a.max(0.0))
    }

    /// m(r) at spectral parameter r, with s = 1/2 + i r and lambda = 1/4 + r^2.
    pub fn singular_multiplicity(&self, r: Complex64) -> Result<f64> {
        if r.norm() <= MATCH_TOL {
            let cf = self.cusp_forms_quarter.ok_or_else(|| {
                Error::InsufficientData(
                    "cusp form multiplicity at lambda = 1/4 is not recorded".into(),
                )
            })?;
            let m = 2.0 * cf as f64 + 0.5 * (self.cusps as f64 + self.tr_phi_half);
            if m < -MATCH_TOL {
                return Err(Error::Negativity(format!("m(0) = {m}")));
            }
            return Ok(m.max(0.0));
        }
        let lambda = r * r + 0.25;
        let eig = self.eigen_multiplicity(lambda)? as i64;
        if r.im <= 0.0 {
            return Ok(eig as f64);
        }
        let s = Complex64::new(0.5, 0.0) + Complex64::i() * r;
        let m = eig + self.phi_order(s);
        if m < 0 {
            return Err(Error::Negativity(format!(
                "eigen multiplicity {eig} below the zero order of phi at s = {s}"
            )));
        }
        Ok(m as f64)
    }

    /// Multiplicity at each residual point 1 - sigma_i: the eigen-multiplicity
    /// of sigma_i (1 - sigma_i) minus the pole order of phi at sigma_i.
    pub fn residual_multiplicities(&self) -> Result<Vec<(f64, i64)>> {
        let mut out = Vec::new();
        for &(p, order) in &self.phi_orders {
            if order <= 0 || p.im != 0.0 || p.re <= 0.5 {
                continue;
            }
            let sigma = p.re;
            let eig = self.eigen_multiplicity(Complex64::new(sigma * (1.0 - sigma), 0.0))? as i64;
            let m = eig - order;
            if m < 0 {
                return Err(Error::Negativity(format!(
                    "pole of order {order} at sigma = {sigma} exceeds eigen multiplicity {eig}"
                )));
            }
            out.push((1.0 - sigma, m));
        }
        Ok(out)
    }
}

pub fn multiplicity_at_half(ledger: &DivisorLedger) -> Result<f64> {
    ledger.multiplicity_at_half()
}

pub fn singular_multiplicity(r: Complex64, ledger: &DivisorLedger) -> Result<f64> {
    ledger.singular_multiplicity(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ledger(d: u32, c: u32, tr: f64) -> DivisorLedger {
        DivisorLedger {
            d_quarter: d,
            tr_phi_half: tr,
            cusps: c,
            eigenvalues: vec![(0.0, 1)],
            phi_orders: vec![],
            cusp_forms_quarter: Some(d),
        }
    }

    #[test]
    fn half_point_examples() {
        assert_eq!(multiplicity_at_half(&ledger(0, 3, -1.0)).unwrap(), 1.0);
        assert_eq!(multiplicity_at_half(&ledger(0, 3, 3.0)).unwrap(), 3.0);
        assert_eq!(multiplicity_at_half(&ledger(1, 0, 0.0)).unwrap(), 2.0);
        assert!(matches!(
            multiplicity_at_half(&ledger(0, 1, -3.0)),
            Err(Error::Negativity(_))
        ));
    }

    #[test]
    fn singular_examples() {
        let l = ledger(0, 3, -1.0);
        assert_eq!(
            singular_multiplicity(Complex64::new(0.0, 0.0), &l).unwrap(),
            1.0
        );
        assert_eq!(
            singular_multiplicity(Complex64::new(0.0, -0.2), &l).unwrap(),
            0.0
        );
        // pole of phi at s = 1/2 + i r = 0.3, no eigenvalue at 1/4 + r^2 = 0.21
        let mut l = ledger(0, 3, -1.0);
        l.phi_orders.push((Complex64::new(0.3, 0.0), 1));
        assert_eq!(
            singular_multiplicity(Complex64::new(0.0, 0.2), &l).unwrap(),
            1.0
        );
        l.cusp_forms_quarter = None;
        assert!(matches!(
            singular_multiplicity(Complex64::new(0.0, 0.0), &l),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            singular_multiplicity(Complex64::new(3.0, 0.0), &l),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn reference_config_residual_point() {
        let l = DivisorLedger::from_config(&SurfaceConfig::reference_gamma2());
        // the pole at 1 is matched by lambda = 0; Z+ has no zero at s = 0
        assert_eq!(l.residual_multiplicities().unwrap(), vec![(0.0, 0)]);
        assert_eq!(
            l.singular_multiplicity(Complex64::new(0.0, 0.5)).unwrap(),
            0.0
        );
        assert_eq!(
            l.singular_multiplicity(Complex64::new(0.0, -0.5)).unwrap(),
            1.0
        );
        assert_eq!(
            l.multiplicity_at_half().unwrap(),
            l.singular_multiplicity(Complex64::new(0.0, 0.0)).unwrap()
        );
    }

    #[test]
    fn pole_without_eigenvalue_is_rejected() {
        let mut cfg = SurfaceConfig::reference_gamma2();
        cfg.poles.push(crate::surface::PoleEntry {
            sigma: 0.8,
            mult: 1,
        });
        let l = DivisorLedger::from_config(&cfg);
        assert!(matches!(
            l.residual_multiplicities(),
            Err(Error::Negativity(_))
        ));
        cfg.eigenvalues.push(crate::surface::EigenEntry {
            lambda: 0.16,
            mult: 1,
        });
        let l = DivisorLedger::from_config(&cfg);
        assert_eq!(l.residual_multiplicities().unwrap()[1].1, 0);
    }
}
