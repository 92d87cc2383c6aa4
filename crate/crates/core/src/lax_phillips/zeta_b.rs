//! Superzeta functions of the complete zetas Z+ and Z-, built from the
//! G1 superzeta function, a Hurwitz term for the Gamma factor and a Mellin
//! integral of the logarithmic derivative of Z (or ZH).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta, hurwitz_zeta_ds, reciprocal_gamma};
use crate::superzeta::quadrature::{
    integrate_from_zero, integrate_half_line, integrate_to_infinity,
};
use crate::superzeta::{Method, QuadratureSpec, SuperzetaValue};
use crate::surface::scattering::{h_log_derivative, h_log_derivative_series};
use crate::surface::{default_l_max, ExpSum, GeodesicTable, SurfaceConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    /// Shift of the Hurwitz term: Gamma(z - 1/2)^c on the plus side and
    /// Gamma(z)^c on the minus side.
    pub fn gamma_shift(self) -> f64 {
        match self {
            Side::Plus => 0.5,
            Side::Minus => 0.0,
        }
    }
}

/// Split point of the Mellin integral.
const DELTA: f64 = 1.0;
/// Below this y the H'/H Taylor tail is summed rather than subtracted.
const SERIES_RADIUS: f64 = 0.05;
const SERIES_EXTRA: usize = 40;

fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn is_real_int(s: Complex64, n: f64) -> bool {
    s.im == 0.0 && s.re == n
}

fn check_poles(s: Complex64) -> Result<()> {
    if is_real_int(s, 1.0) || is_real_int(s, 2.0) {
        return Err(Error::pole(format!("s = {s}")));
    }
    Ok(())
}

pub(crate) fn check_half_plane(z: Complex64) -> Result<()> {
    if !(z.re > 1.0) {
        return Err(Error::domain(format!(
            "complete zeta data are evaluated only for Re z > 1, got {z}"
        )));
    }
    Ok(())
}

/// (vol/pi) [zeta_H(s-1, z) - (z - 1/2) zeta_H(s, z)], the superzeta function of G1.
pub fn script_g1(s: Complex64, z: Complex64, vol: f64) -> Result<Complex64> {
    check_poles(s)?;
    let a = hurwitz_zeta(s - 1.0, z)?;
    let b = hurwitz_zeta(s, z)?;
    Ok((a - (z - 0.5) * b) * (vol / PI))
}

/// d/ds of `script_g1`, term by term.
pub fn script_g1_ds(s: Complex64, z: Complex64, vol: f64) -> Result<Complex64> {
    check_poles(s)?;
    let a = hurwitz_zeta_ds(s - 1.0, z)?;
    let b = hurwitz_zeta_ds(s, z)?;
    Ok((a - (z - 0.5) * b) * (vol / PI))
}

/// e^x - sum_{j<n} x^j / j!.
fn exp_remainder(x: f64, n: usize) -> f64 {
    if n == 0 {
        return x.exp();
    }
    if x.abs() < 2.0 {
        let mut term = 1.0;
        for j in 1..=n {
            term *= x / j as f64;
        }
        let mut sum = term;
        let mut j = n;
        while term.abs() > 1e-18 * sum.abs() {
            j += 1;
            term *= x / j as f64;
            sum += term;
        }
        return sum;
    }
    let mut partial = 0.0;
    let mut term = 1.0;
    for j in 0..n {
        partial += term;
        term *= x / (j + 1) as f64;
    }
    x.exp() - partial
}

/// sin(pi s) / (pi (m - s)), continuous through s = m.
fn sin_over(s: Complex64, m: usize) -> Complex64 {
    let t = (s - m as f64) * PI;
    let sinc = if t.norm() < 1e-4 {
        let t2 = t * t;
        Complex64::new(1.0, 0.0) - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    };
    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    sinc * sign
}

/// The logarithmic derivative (Z'/Z)(z + y), plus (H'/H)(z + y) on the minus side.
pub(crate) struct LogDerivative<'a> {
    exp: ExpSum,
    config: Option<&'a SurfaceConfig>,
    z: Complex64,
}

impl<'a> LogDerivative<'a> {
    pub(crate) fn new(
        side: Side,
        z: Complex64,
        table: &GeodesicTable,
        config: &'a SurfaceConfig,
    ) -> Self {
        let l_max = default_l_max(z.re, table, 1e-15);
        LogDerivative {
            exp: ExpSum::selberg_log_derivative(z, table, l_max),
            config: match side {
                Side::Plus => None,
                Side::Minus => Some(config),
            },
            z,
        }
    }

    pub(crate) fn eval(&self, y: f64) -> Complex64 {
        let mut v = self.exp.eval(y);
        if let Some(cfg) = self.config {
            v += h_log_derivative(self.z + y, cfg);
        }
        v
    }

    /// Taylor coefficients at y = 0 of orders 0..n.
    fn taylor(&self, n: usize) -> Vec<Complex64> {
        let mut t: Vec<Complex64> = (0..n).map(|j| self.exp.taylor(j)).collect();
        if let Some(cfg) = self.config {
            if n > 0 {
                let g = h_log_derivative_series(self.z, cfg, n - 1);
                for (a, b) in t.iter_mut().zip(g) {
                    *a += b;
                }
            }
        }
        t
    }

    /// The value minus its Taylor polynomial of degree n - 1, without
    /// cancellation near y = 0.
    fn eval_minus_taylor(&self, y: f64, n: usize, h_series: &[Complex64]) -> Complex64 {
        let mut v: Complex64 = self
            .exp
            .terms
            .iter()
            .map(|&(c, lam)| c * exp_remainder(-lam * y, n))
            .sum();
        if let Some(cfg) = self.config {
            if y < SERIES_RADIUS {
                let mut p = y.powi(n as i32);
                for g in &h_series[n..] {
                    v += g * p;
                    p *= y;
                }
            } else {
                let mut direct = h_log_derivative(self.z + y, cfg);
                let mut p = 1.0;
                for g in &h_series[..n] {
                    direct -= g * p;
                    p *= y;
                }
                v += direct;
            }
        }
        v
    }
}

/// (sin pi s / pi) int_0^inf F(y) y^{-s} dy for Re s < 3, continued past
/// Re s = 1 by subtracting the Taylor polynomial of F on [0, DELTA].
fn mellin_term(s: Complex64, f: &LogDerivative, quad: &QuadratureSpec) -> Result<(Complex64, f64)> {
    let n = if s.re < 0.0 {
        0
    } else {
        s.re.floor() as usize + 1
    };
    let h_series = match f.config {
        Some(cfg) => h_log_derivative_series(f.z, cfg, n + SERIES_EXTRA),
        None => Vec::new(),
    };
    let taylor = f.taylor(n);
    let pow = |y: f64| (-s * y.ln()).exp();
    let near = integrate_from_zero(
        |y| {
            // the integrand is O(y^{n - Re s}) with n - Re s in (0, 1]
            if y < 1e-30 {
                return Ok(c0());
            }
            Ok(f.eval_minus_taylor(y, n, &h_series) * pow(y))
        },
        DELTA,
        quad,
    )?;
    let far = integrate_to_infinity(|y| Ok(f.eval(y) * pow(y)), DELTA, quad)?;
    let pref = (s * PI).sin() / PI;
    let mut v = pref * (near.value + far.value);
    let mut err = pref.norm() * (near.error + far.error);
    for (j, fj) in taylor.iter().enumerate() {
        let m = j + 1;
        // f_j delta^{m-s} / (m - s), times the prefactor
        let t = fj * ((Complex64::new(m as f64, 0.0) - s) * DELTA.ln()).exp() * sin_over(s, m);
        v += t;
        err += 4.0 * f64::EPSILON * t.norm();
    }
    Ok((v, err))
}

/// Heuristic size of the contribution of norms in (X/2, X], from the closed
/// Mellin transform (1/Gamma(s)) sum c lambda^{s-1} of those exponentials.
fn table_tail(s: Complex64, z: Complex64, table: &GeodesicTable) -> Result<f64> {
    let half = 0.5 * table.max_norm;
    let upper = GeodesicTable {
        group: table.group.clone(),
        max_norm: table.max_norm,
        entries: table
            .entries
            .iter()
            .copied()
            .filter(|e| e.norm > half)
            .collect(),
    };
    let l_max = default_l_max(z.re, &upper, 1e-15);
    let e = ExpSum::selberg_log_derivative(z, &upper, l_max);
    let rg = reciprocal_gamma(s)?;
    let sum: Complex64 = e
        .terms
        .iter()
        .map(|&(c, lam)| c * (lam.ln() * (s - 1.0)).exp())
        .sum();
    Ok((rg * sum).norm())
}

/// zeta_B(s, z) on the given side for Re z > 1, Re s < 3, s not 1 or 2.
pub fn zeta_b(
    side: Side,
    s: Complex64,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<SuperzetaValue> {
    check_half_plane(z)?;
    check_poles(s)?;
    if !(s.re < 3.0) {
        return Err(Error::domain(format!(
            "integral representation used for Re s < 3, got {s}"
        )));
    }
    let g = script_g1(s, z, config.vol())?;
    let mut v = -g;
    if config.cusps > 0 {
        v += hurwitz_zeta(s, z - side.gamma_shift())? * config.cusps as f64;
    }
    let f = LogDerivative::new(side, z, table, config);
    let (i, qerr) = mellin_term(s, &f, quad)?;
    v += i;
    let err = qerr + table_tail(s, z, table)? + 64.0 * f64::EPSILON * (g.norm() + v.norm());
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Convergence(format!("non-finite zeta_B at s = {s}")));
    }
    Ok(SuperzetaValue {
        value: v,
        abs_error: err,
        method: Method::MellinIntegral,
    })
}

pub fn zeta_b_plus(
    s: Complex64,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<SuperzetaValue> {
    zeta_b(Side::Plus, s, z, table, config, quad)
}

pub fn zeta_b_minus(
    s: Complex64,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<SuperzetaValue> {
    zeta_b(Side::Minus, s, z, table, config, quad)
}

/// int_0^inf F(y) y^{r-1} dy by quadrature, F the side's logarithmic derivative.
pub fn log_derivative_moment(
    side: Side,
    r: u32,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    check_half_plane(z)?;
    if r == 0 {
        return Err(Error::domain("moment order r must be positive"));
    }
    let f = LogDerivative::new(side, z, table, config);
    let q = integrate_half_line(|y| Ok(f.eval(y) * y.powi(r as i32 - 1)), quad)?;
    Ok((q.value, q.error))
}

/// d/ds zeta_B(s, z) at s = 1 - r, differentiated term by term. At an
/// integer s <= 0 the Mellin term's sin(pi s) prefactor vanishes and its
/// derivative leaves (-1)^{r-1} int_0^inf F(y) y^{r-1} dy.
pub fn zeta_b_ds_at(
    side: Side,
    r: u32,
    z: Complex64,
    table: &GeodesicTable,
    config: &SurfaceConfig,
    quad: &QuadratureSpec,
) -> Result<SuperzetaValue> {
    check_half_plane(z)?;
    let s = Complex64::new(1.0 - r as f64, 0.0);
    let g = script_g1_ds(s, z, config.vol())?;
    let mut v = -g;
    if config.cusps > 0 {
        v += hurwitz_zeta_ds(s, z - side.gamma_shift())? * config.cusps as f64;
    }
    let (m, merr) = log_derivative_moment(side, r, z, table, config, quad)?;
    let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
    v += m * sign;
    let tail = table_tail(Complex64::new(r as f64, 0.0), z, table)?;
    let mut fact = 1.0;
    for k in 1..r {
        fact *= k as f64;
    }
    Ok(SuperzetaValue {
        value: v,
        abs_error: merr + fact * tail + 64.0 * f64::EPSILON * (g.norm() + v.norm()),
        method: Method::MellinIntegral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superzeta::residue_of;
    use crate::surface::{selberg_log_z, EnumerationLimits};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn trivial_config() -> SurfaceConfig {
        SurfaceConfig {
            genus: 2,
            cusps: 0,
            c1: 0.0,
            c2: 0.0,
            dirichlet: vec![],
            d_quarter: 0,
            tr_phi_half: 0.0,
            poles: vec![],
            eigenvalues: vec![],
            cusp_forms_quarter: None,
        }
    }

    #[test]
    fn exp_remainder_small_and_large() {
        for x in [-1e-3f64, -0.5, -1.9, -2.5, -40.0] {
            for n in 0..5 {
                let mut want = x.exp();
                let mut t = 1.0;
                for j in 0..n {
                    want -= t;
                    t *= x / (j + 1) as f64;
                }
                let got = exp_remainder(x, n);
                assert!(
                    (got - want).abs() <= 1e-14 * want.abs().max(1e-300) + 1e-15,
                    "x={x} n={n}"
                );
            }
        }
        // no cancellation: e^x - 1 - x ~ x^2/2
        let r = exp_remainder(-1e-6, 2);
        assert!((r - (5e-13 - 1e-18 / 6.0)).abs() < 1e-25, "{r:e}");
    }

    #[test]
    fn sin_over_is_continuous() {
        for m in 1..4 {
            let at = sin_over(c(m as f64, 0.0), m);
            let near = sin_over(c(m as f64 + 1e-7, 0.0), m);
            assert!((at - near).norm() < 1e-12);
            let s = c(m as f64 + 0.3, 0.2);
            let direct = (s * PI).sin() / (PI * (Complex64::new(m as f64, 0.0) - s));
            assert!((sin_over(s, m) - direct).norm() < 1e-15);
        }
    }

    #[test]
    fn script_g1_examples() {
        let vol = 2.0 * PI;
        let z = c(1.0, 0.0);
        let v = script_g1(c(3.0, 0.0), z, vol).unwrap();
        // direct Hurwitz sums at z = 1
        let (mut z2, mut z3) = (0.0, 0.0);
        for k in (1..200_000u64).rev() {
            let k = k as f64;
            z2 += 1.0 / (k * k);
            z3 += 1.0 / (k * k * k);
        }
        z2 += 1.0 / 200_000.0;
        let want = 2.0 * (z2 - 0.5 * z3);
        assert!((v.re - want).abs() < 1e-9);
        // s = 0 through Bernoulli polynomials
        let z = c(2.3, 0.4);
        let b2 = z * z - z + 1.0 / 6.0;
        let want = (-b2 / 2.0 - (z - 0.5) * (-(z - 0.5))) * (vol / PI);
        let got = script_g1(c(0.0, 0.0), z, vol).unwrap();
        assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        let r = residue_of(|s| script_g1(s, c(2.0, 0.0), vol), c(2.0, 0.0), 1e-3).unwrap();
        assert!((r.value.re - vol / PI).abs() < 1e-9);
        assert!(matches!(
            script_g1(c(1.0, 0.0), z, vol),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn empty_data_reduces_to_g1() {
        let cfg = trivial_config();
        let t = GeodesicTable::empty(100.0);
        let q = QuadratureSpec::default();
        for s in [c(-1.5, 0.3), c(0.5, 0.0), c(2.5, -1.0)] {
            let z = c(2.5, 0.5);
            let v = zeta_b_plus(s, z, &t, &cfg, &q).unwrap().value;
            assert_eq!(v, -script_g1(s, z, cfg.vol()).unwrap());
        }
    }

    #[test]
    fn h_trivial_difference() {
        let mut cfg = SurfaceConfig::reference_gamma2();
        cfg.dirichlet.clear();
        let t = GeodesicTable::build(2000.0, &EnumerationLimits::default()).unwrap();
        let q = QuadratureSpec::default();
        let z = c(2.0, 0.3);
        for s in [c(-0.5, 0.0), c(1.5, 0.5)] {
            let p = zeta_b_plus(s, z, &t, &cfg, &q).unwrap().value;
            let m = zeta_b_minus(s, z, &t, &cfg, &q).unwrap().value;
            let want = (hurwitz_zeta(s, z).unwrap() - hurwitz_zeta(s, z - 0.5).unwrap()) * 3.0;
            assert!((m - p - want).norm() < 1e-13);
        }
    }

    #[test]
    fn mellin_term_matches_closed_transform() {
        // (sin pi s / pi) int e^{-lambda y} y^{-s} dy = lambda^{s-1} / Gamma(s)
        let cfg = SurfaceConfig::reference_gamma2();
        let t = GeodesicTable::build(3000.0, &EnumerationLimits::default()).unwrap();
        let q = QuadratureSpec::default();
        let z = c(1.7, 0.4);
        let f = LogDerivative::new(Side::Plus, z, &t, &cfg);
        for s in [
            c(-2.2, 0.0),
            c(0.4, 1.0),
            c(1.3, -0.5),
            c(2.7, 0.2),
            c(2.0, 1e-3),
            c(1.0, -1e-3),
        ] {
            let (v, err) = mellin_term(s, &f, &q).unwrap();
            let rg = reciprocal_gamma(s).unwrap();
            let want: Complex64 = f
                .exp
                .terms
                .iter()
                .map(|&(c, lam)| c * (lam.ln() * (s - 1.0)).exp())
                .sum::<Complex64>()
                * rg;
            assert!(
                (v - want).norm() < 1e-11 * want.norm().max(1.0),
                "s={s}: {v} vs {want}"
            );
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn minus_side_taylor_subtraction() {
        // the H'/H part, checked against a plain quadrature where it converges
        let mut cfg = SurfaceConfig::reference_gamma2();
        cfg.cusps = 3;
        let t = GeodesicTable::empty(10.0);
        let q = QuadratureSpec::default();
        let z = c(1.5, 0.2);
        let f = LogDerivative::new(Side::Minus, z, &t, &cfg);
        let s = c(0.3, 0.4);
        let (v, _) = mellin_term(s, &f, &q).unwrap();
        let plain = integrate_half_line(
            |y| {
                if y <= 0.0 {
                    return Ok(c0());
                }
                Ok(f.eval(y) * (-s * y.ln()).exp())
            },
            &q,
        )
        .unwrap();
        let want = plain.value * (s * PI).sin() / PI;
        assert!((v - want).norm() < 1e-10, "{v} vs {want}");
        // holomorphic across s = 1 where n jumps from 1 to 2
        let a = mellin_term(c(1.0 - 1e-9, 0.1), &f, &q).unwrap().0;
        let b = mellin_term(c(1.0 + 1e-9, 0.1), &f, &q).unwrap().0;
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn derivative_at_zero_is_log_det() {
        let cfg = SurfaceConfig::reference_gamma2();
        let t = GeodesicTable::build(3000.0, &EnumerationLimits::default()).unwrap();
        let q = QuadratureSpec::default();
        let z = c(2.0, 0.5);
        let d = zeta_b_ds_at(Side::Plus, 1, z, &t, &cfg, &q).unwrap().value;
        let h = 1e-3;
        let f = |x: f64| zeta_b_plus(c(x, 0.0), z, &t, &cfg, &q).unwrap().value;
        // Richardson-extrapolated central difference
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h / 2.0) - f(-h / 2.0)) / h;
        let fd = (4.0 * d2 - d1) / 3.0;
        assert!((fd - d).norm() < 1e-8, "{fd} vs {d}");
        // the Mellin piece integrates to -log Z
        let (m, _) = log_derivative_moment(Side::Plus, 1, z, &t, &cfg, &q).unwrap();
        let lz = selberg_log_z(z, &t, default_l_max(z.re, &t, 1e-15))
            .unwrap()
            .value;
        assert!((m + lz).norm() < 1e-12);
    }

    #[test]
    fn domain_and_poles() {
        let cfg = SurfaceConfig::reference_gamma2();
        let t = GeodesicTable::empty(10.0);
        let q = QuadratureSpec::default();
        assert!(matches!(
            zeta_b_plus(c(0.5, 0.0), c(1.0, 0.0), &t, &cfg, &q),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            zeta_b_minus(c(2.0, 0.0), c(2.0, 0.0), &t, &cfg, &q),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            zeta_b_plus(c(3.5, 0.0), c(2.0, 0.0), &t, &cfg, &q),
            Err(Error::Domain(_))
        ));
    }
}
