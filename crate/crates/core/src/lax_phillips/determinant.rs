//! Regularized determinants of zI - (I/2 +- B): the closed form Upsilon Z
//! and the superzeta-derivative path, the phi quotient, higher-depth
//! determinants and the normalizing constant of DET*.

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use super::zeta_b::{check_half_plane, log_derivative_moment, zeta_b_ds_at, Side};
use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta_ds, log_g1, log_gamma, log_milnor_gamma, Dd, Real};
use crate::superzeta::QuadratureSpec;
use crate::surface::scattering::log_scattering_phi;
use crate::surface::{
    default_l_max, lambda_dirichlet, poly_selberg_log, selberg_log_z, GeodesicTable, SurfaceConfig,
};

/// zeta'(-1) from the analytic s-derivative of the Hurwitz zeta function,
/// evaluated in double-double so the f64 result is correctly rounded.
pub static ZETA_PRIME_M1: Lazy<f64> = Lazy::new(|| {
    let one = Complex::new(Dd::from_f64(1.0), Dd::from_f64(0.0));
    hurwitz_zeta_ds(-one, one).map_or(f64::NAN, |v| v.re.to_f64())
});

fn ln_2pi() -> f64 {
    <f64 as Real>::ln_2pi()
}

/// Tolerance passed to the l-truncation of the Euler products.
const L_TOL: f64 = 1e-15;

/// Z+ = Z / (G1 Gamma(z - 1/2)^c) or Z- = Z+ phi, over a fixed table and config.
#[derive(Clone, Copy, Debug)]
pub struct CompleteZeta<'a> {
    pub table: &'a GeodesicTable,
    pub config: &'a SurfaceConfig,
    pub side: Side,
}

impl<'a> CompleteZeta<'a> {
    pub fn new(side: Side, table: &'a GeodesicTable, config: &'a SurfaceConfig) -> Self {
        CompleteZeta {
            table,
            config,
            side,
        }
    }

    /// log Z_side(z), summed from component logarithms, with an error bound
    /// from the Euler product truncation.
    pub fn log_value(&self, z: Complex64) -> Result<(Complex64, f64)> {
        check_half_plane(z)?;
        let cfg = self.config;
        let sel = selberg_log_z(z, self.table, default_l_max(z.re, self.table, L_TOL))?;
        let mut v = sel.value - log_g1(z, cfg.vol())?;
        if cfg.cusps > 0 {
            v -= log_gamma(z - 0.5)? * cfg.cusps as f64;
        }
        let mut err = sel.error();
        if self.side == Side::Minus {
            let lp = log_scattering_phi(z, cfg)?;
            v += lp;
            err += 16.0 * f64::EPSILON * lp.norm();
        }
        Ok((v, err + 16.0 * f64::EPSILON * v.norm()))
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.log_value(z)?.0.exp())
    }
}

/// log Upsilon_+(z).
pub fn log_upsilon_plus(z: Complex64, config: &SurfaceConfig) -> Complex64 {
    let w = config.vol() / (2.0 * PI);
    let l = ln_2pi();
    (z * (2.0 * l) + 2.0 * *ZETA_PRIME_M1 - 0.5 * l) * w + 0.5 * config.cusps as f64 * l
}

/// log Upsilon_-(z).
pub fn log_upsilon_minus(z: Complex64, config: &SurfaceConfig) -> Complex64 {
    let vol = config.vol();
    let w = vol / (2.0 * PI);
    let l = ln_2pi();
    z * (vol / PI * l - config.c1) + w * (2.0 * *ZETA_PRIME_M1 - 0.5 * l) - config.c2
        + 0.5 * config.cusps as f64 * 2f64.ln()
}

pub fn log_upsilon(side: Side, z: Complex64, config: &SurfaceConfig) -> Complex64 {
    match side {
        Side::Plus => log_upsilon_plus(z, config),
        Side::Minus => log_upsilon_minus(z, config),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetMethod {
    ClosedForm,
    SuperzetaDerivative,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterminantResult {
    pub value: Complex64,
    pub log_value: Complex64,
    pub upsilon_factor: Complex64,
    pub zeta_side_factor: Complex64,
    /// Absolute error of `log_value`, i.e. roughly the relative error of `value`.
    pub error: f64,
    pub method: DetMethod,
}

impl DeterminantResult {
    fn from_logs(
        log_upsilon: Complex64,
        log_zeta: Complex64,
        error: f64,
        method: DetMethod,
    ) -> Self {
        let log_value = log_upsilon + log_zeta;
        DeterminantResult {
            value: log_value.exp(),
            log_value,
            upsilon_factor: log_upsilon.exp(),
            zeta_side_factor: log_zeta.exp(),
            error,
            method,
        }
    }
}

/// det(zI - (I/2 +- B)) = Upsilon_+-(z) Z_+-(z) in closed form.
pub fn det_closed(
    side: Side,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
) -> Result<DeterminantResult> {
    let (lz, err) = CompleteZeta::new(side, table, config).log_value(z)?;
    Ok(DeterminantResult::from_logs(
        log_upsilon(side, z, config),
        lz,
        err,
        DetMethod::ClosedForm,
    ))
}

pub fn det_plus(
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
) -> Result<DeterminantResult> {
    det_closed(Side::Plus, z, table, config)
}

pub fn det_minus(
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
) -> Result<DeterminantResult> {
    det_closed(Side::Minus, z, table, config)
}

/// exp(-d/ds zeta_B(s, z) at s = 0), the zeta-regularized determinant.
pub fn det_from_superzeta(
    side: Side,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<DeterminantResult> {
    let d = zeta_b_ds_at(side, 1, z, table, config, quad)?;
    let lu = log_upsilon(side, z, config);
    Ok(DeterminantResult::from_logs(
        lu,
        -d.value - lu,
        d.abs_error,
        DetMethod::SuperzetaDerivative,
    ))
}

/// pi^{c/2} e^{c1 z + c2} det_-(z) / det_+(z), which equals phi(z).
pub fn phi_quotient(
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
) -> Result<Complex64> {
    let p = det_plus(z, table, config)?;
    let m = det_minus(z, table, config)?;
    let pre = 0.5 * config.cusps as f64 * PI.ln() + z * config.c1 + config.c2;
    Ok((pre + m.log_value - p.log_value).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HigherDepthResult {
    pub r: u32,
    /// log det by Milnor gammas and the poly-Selberg zeta function.
    pub log_closed: Complex64,
    /// -d/ds zeta_B+(s, z) at s = 1 - r.
    pub log_superzeta: Complex64,
    /// int_0^inf (Z'/Z)(z + y) y^{r-1} dy by quadrature.
    pub mellin_quadrature: Complex64,
    /// (r-1)! sum_P Lambda(P) N(P)^{-z} (log N(P))^{-r}.
    pub mellin_dirichlet: Complex64,
    /// |exp(log_closed) - exp(log_superzeta)| / |exp(log_closed)|.
    pub path_disagreement: f64,
    pub error: f64,
}

impl HigherDepthResult {
    pub fn value(&self) -> Complex64 {
        self.log_closed.exp()
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// The depth-r determinant by both paths.
pub fn higher_depth_det(
    r: u32,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<HigherDepthResult> {
    check_half_plane(z)?;
    if r == 0 {
        return Err(Error::domain("depth r must be at least 1"));
    }
    let rc = Complex64::new(r as f64, 0.0);
    let c = config.cusps as f64;
    let vol = config.vol();
    let l_max = default_l_max(z.re, table, L_TOL);
    let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
    let fact = factorial(r - 1);

    let milnor =
        (log_milnor_gamma(rc + 1.0, z)? - (z - 0.5) * log_milnor_gamma(rc, z)?) * (vol / PI);
    let mut closed = milnor;
    if c > 0.0 {
        closed -= log_milnor_gamma(rc, z - 0.5)? * c;
    }
    let ps = poly_selberg_log(r, z, table, l_max)?;
    closed += ps.value * (sign * fact);

    let d = zeta_b_ds_at(Side::Plus, r, z, table, config, quad)?;
    let (mq, _) = log_derivative_moment(Side::Plus, r, z, table, config, quad)?;
    let md = lambda_dirichlet(r, z, table, l_max)?.value * fact;
    let log_superzeta = -d.value;
    let a = closed.exp();
    let path_disagreement = (a - log_superzeta.exp()).norm() / a.norm();
    Ok(HigherDepthResult {
        r,
        log_closed: closed,
        log_superzeta,
        mellin_quadrature: mq,
        mellin_dirichlet: md,
        path_disagreement,
        error: d.abs_error + fact * ps.error(),
    })
}

/// 2^{c/2} exp[(vol/2pi)(2 zeta'(-1) + (3/2) log 2pi)], the constant in DET*.
pub fn det_star_constant(config: &SurfaceConfig) -> f64 {
    let w = config.vol() / (2.0 * PI);
    (0.5 * config.cusps as f64 * 2f64.ln() + w * (2.0 * *ZETA_PRIME_M1 + 1.5 * ln_2pi())).exp()
}

/// The constant obtained by evaluating Upsilon_+ Upsilon_- / Upsilon_+ at z = 1
/// directly: 2^{c/2} exp[(vol/2pi)(2 zeta'(-1) + (1/2) log 2pi)]. It differs
/// from `det_star_constant` by the factor G1(1) = (2pi)^{vol/2pi}.
pub fn det_star_constant_upsilon_route(config: &SurfaceConfig) -> f64 {
    let w = config.vol() / (2.0 * PI);
    (0.5 * config.cusps as f64 * 2f64.ln() + w * (2.0 * *ZETA_PRIME_M1 + 0.5 * ln_2pi())).exp()
}

/// DET* from a supplied Z'(1) > 0.
pub fn det_star_from_zprime(zprime1: f64, config: &SurfaceConfig) -> Result<f64> {
    if !(zprime1 > 0.0 && zprime1.is_finite()) {
        return Err(Error::domain(format!(
            "Z'(1) must be positive and finite, got {zprime1}"
        )));
    }
    Ok(det_star_constant(config) * zprime1)
}
