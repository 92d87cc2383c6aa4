//! The scattering determinant phi(s) = L(s) H(s) with
//! L(s) = pi^{c/2} (Gamma(s - 1/2) / Gamma(s))^c e^{c1 s + c2} and
//! H(s) = 1 + sum_n a(n) u_n^{-2s}.

use num_complex::Complex64;

use super::config::SurfaceConfig;
use crate::error::{Error, Result};
use crate::special::log_gamma;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatteringValue {
    pub value: Complex64,
    /// Bound on the Dirichlet terms beyond n_max.
    pub tail: f64,
}

fn check(s: Complex64) -> Result<()> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "scattering data used only for Re s > 1, got {s}"
        )));
    }
    Ok(())
}

/// log L(s), assembled from principal component logs.
pub fn log_l_factor(s: Complex64, config: &SurfaceConfig) -> Result<Complex64> {
    let c = config.cusps as f64;
    if c == 0.0 {
        return Ok(s * config.c1 + config.c2);
    }
    let lg = log_gamma(s - 0.5)? - log_gamma(s)?;
    Ok(Complex64::new(0.5 * c * std::f64::consts::PI.ln(), 0.0)
        + lg * c
        + s * config.c1
        + config.c2)
}

/// H(s) with the first `n_max` Dirichlet terms.
pub fn h_factor(s: Complex64, config: &SurfaceConfig, n_max: usize) -> ScatteringValue {
    let mut v = Complex64::new(1.0, 0.0);
    let mut tail = 0.0;
    for (i, t) in config.dirichlet.iter().enumerate() {
        let term = (s * (-2.0 * t.u.ln())).exp() * t.a;
        if i < n_max {
            v += term;
        } else {
            tail += term.norm();
        }
    }
    ScatteringValue { value: v, tail }
}

/// log H(s) (principal branch of a value near 1 for Re s > 1).
pub fn log_h_factor(s: Complex64, config: &SurfaceConfig) -> Result<Complex64> {
    let h = h_factor(s, config, usize::MAX).value;
    if h.norm() == 0.0 {
        return Err(Error::Zero {
            at: format!("H({s})"),
            multiplicity: 1,
        });
    }
    Ok(h.ln())
}

pub fn scattering_phi_with_tail(
    s: Complex64,
    config: &SurfaceConfig,
    n_max: usize,
) -> Result<ScatteringValue> {
    check(s)?;
    let l = log_l_factor(s, config)?.exp();
    let h = h_factor(s, config, n_max);
    Ok(ScatteringValue {
        value: l * h.value,
        tail: l.norm() * h.tail,
    })
}

/// phi(s) = L(s) H(s) using every configured Dirichlet term.
pub fn scattering_phi(s: Complex64, config: &SurfaceConfig) -> Result<Complex64> {
    Ok(scattering_phi_with_tail(s, config, usize::MAX)?.value)
}

/// log phi(s) = log L(s) + log H(s).
pub fn log_scattering_phi(s: Complex64, config: &SurfaceConfig) -> Result<Complex64> {
    check(s)?;
    Ok(log_l_factor(s, config)? + log_h_factor(s, config)?)
}

/// Taylor coefficients in y of (H'/H)(z + y) at y = 0, orders 0..k.
pub fn h_log_derivative_series(z: Complex64, config: &SurfaceConfig, k: usize) -> Vec<Complex64> {
    // H(z+y) = sum_j h_j y^j
    let n = k + 2;
    let mut h = vec![Complex64::new(0.0, 0.0); n];
    h[0] = Complex64::new(1.0, 0.0);
    for t in &config.dirichlet {
        let rate = 2.0 * t.u.ln();
        let base = (z * -rate).exp() * t.a;
        let mut p = base;
        for (j, hj) in h.iter_mut().enumerate() {
            *hj += p;
            p *= -rate / (j + 1) as f64;
        }
    }
    // H'(z+y) coefficients
    let dh: Vec<Complex64> = (0..=k).map(|j| h[j + 1] * (j + 1) as f64).collect();
    // g = H'/H by series division
    let mut g = vec![Complex64::new(0.0, 0.0); k + 1];
    for j in 0..=k {
        let mut acc = dh[j];
        for i in 1..=j {
            acc -= h[i] * g[j - i];
        }
        g[j] = acc / h[0];
    }
    g
}

/// (H'/H)(w).
pub fn h_log_derivative(w: Complex64, config: &SurfaceConfig) -> Complex64 {
    let mut h = Complex64::new(1.0, 0.0);
    let mut dh = Complex64::new(0.0, 0.0);
    for t in &config.dirichlet {
        let rate = 2.0 * t.u.ln();
        let e = (w * -rate).exp() * t.a;
        h += e;
        dh -= e * rate;
    }
    dh / h
}
