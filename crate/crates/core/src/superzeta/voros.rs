use num_complex::Complex64;

use super::asymptotic::AsymptoticData;
use super::quadrature::{integrate_half_line, QuadResult, QuadratureSpec};
use super::{Method, SuperzetaValue};
use crate::error::{Error, Result};
use crate::special::{gamma_ratio, reciprocal_gamma};

fn is_real_int(s: Complex64, n: f64) -> bool {
    s.im == 0.0 && s.re == n
}

/// Gamma(s - mu) / (Gamma(s) Gamma(-mu)).
fn term_factor(s: Complex64, mu: f64) -> Result<Complex64> {
    let r = reciprocal_gamma(Complex64::new(-mu, 0.0))?;
    if r == Complex64::new(0.0, 0.0) {
        return Ok(r);
    }
    Ok(gamma_ratio(s - mu, s)? * r)
}

/// int_0^inf h_n'''(z+y) y^{2-s} dy.
fn mellin_integral(
    s: Complex64,
    z: Complex64,
    n: usize,
    asym: &AsymptoticData,
    quad: &QuadratureSpec,
) -> Result<QuadResult> {
    let e = Complex64::new(2.0, 0.0) - s;
    integrate_half_line(
        |y| {
            if y <= 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let h = asym.remainder.third_derivative(n, z + y)?;
            Ok(h * (e * y.ln()).exp())
        },
        quad,
    )
}

/// Continuation of Z_f(s, z) to Re s < 3 from the expansion of log Delta_f.
pub fn voros_continue(
    s: Complex64,
    z: Complex64,
    asym: &AsymptoticData,
    quad: &QuadratureSpec,
) -> Result<SuperzetaValue> {
    asym.check_sector(z)?;
    if !(s.re < 3.0) {
        return Err(Error::domain(format!(
            "continued representation needs Re s < 3, got {s}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let mut v = Complex64::new(0.0, 0.0);
    if asym.a2_tilde != 0.0 {
        if is_real_int(s, 1.0) || is_real_int(s, 2.0) {
            return Err(Error::pole(format!("s = {s}")));
        }
        v += (two - s).mul_add_exp(z) * (2.0 * asym.a2_tilde) / ((s - one) * (s - two));
    }
    if asym.a1_tilde != 0.0 {
        if is_real_int(s, 1.0) {
            return Err(Error::pole(format!("s = {s}")));
        }
        v -= (one - s).mul_add_exp(z) * asym.a1_tilde / (s - one);
    }
    if asym.a0_tilde != 0.0 {
        v += (-s).mul_add_exp(z) * asym.a0_tilde;
    }
    let n = asym.split_index(s.re)?;
    for t in &asym.terms[..n] {
        let f = term_factor(s, t.exponent)?;
        if f != Complex64::new(0.0, 0.0) {
            v -= f * (Complex64::new(t.exponent, 0.0) - s).mul_add_exp(z) * t.coeff;
        }
    }
    let r = reciprocal_gamma(s)? * reciprocal_gamma(Complex64::new(3.0, 0.0) - s)?;
    let mut err = 16.0 * f64::EPSILON * v.norm();
    if r != Complex64::new(0.0, 0.0) {
        let q = mellin_integral(s, z, n, asym, quad)?;
        v += r * q.value;
        err += r.norm() * q.error;
    }
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Convergence(format!(
            "non-finite continuation at s = {s}"
        )));
    }
    Ok(SuperzetaValue {
        value: v,
        abs_error: err,
        method: Method::Continued,
    })
}

trait PowOf {
    /// z^self with the principal branch.
    fn mul_add_exp(self, z: Complex64) -> Complex64;
}

impl PowOf for Complex64 {
    fn mul_add_exp(self, z: Complex64) -> Complex64 {
        (self * z.ln()).exp()
    }
}

/// -d/ds Z_f(s, z) at s = 0 in closed form; equals log D_f(z).
///
/// ã2 z^2 (log z - 3/2) + ã1 z (log z - 1) + ã0 log z + sum_{k<n} a_k z^{mu_k}
/// - 1/2 int_0^inf h_n'''(z+y) y^2 dy
pub fn voros_log_det(
    z: Complex64,
    asym: &AsymptoticData,
    quad: &QuadratureSpec,
) -> Result<SuperzetaValue> {
    asym.check_sector(z)?;
    let n = asym.split_index(0.0)?;
    let mut v = asym.log_part(z);
    for t in &asym.terms[..n] {
        v += z.powf(t.exponent) * t.coeff;
    }
    let q = mellin_integral(Complex64::new(0.0, 0.0), z, n, asym, quad)?;
    v -= q.value * 0.5;
    Ok(SuperzetaValue {
        value: v,
        abs_error: 0.5 * q.error + 16.0 * f64::EPSILON * v.norm(),
        method: Method::Continued,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidueEstimate {
    pub value: Complex64,
    /// Largest deviation of a single ray from the average.
    pub spread: f64,
}

/// Residue of `f` at `s0` from eps e^{i theta} f(s0 + eps e^{i theta}) averaged
/// over four rays; the average cancels the Laurent terms up to eps^4.
pub fn residue_of<F>(f: F, s0: Complex64, eps: f64) -> Result<ResidueEstimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let dirs = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let mut samples = [Complex64::new(0.0, 0.0); 4];
    for (d, out) in dirs.iter().zip(samples.iter_mut()) {
        let e = d * eps;
        *out = e * f(s0 + e)?;
    }
    let avg = samples.iter().sum::<Complex64>() / 4.0;
    let spread = samples.iter().map(|x| (x - avg).norm()).fold(0.0, f64::max);
    Ok(ResidueEstimate { value: avg, spread })
}

/// Residue of the continued superzeta function at s0 (1 or 2).
pub fn residue_at(
    s0: Complex64,
    z: Complex64,
    asym: &AsymptoticData,
    quad: &QuadratureSpec,
) -> Result<ResidueEstimate> {
    residue_of(|s| Ok(voros_continue(s, z, asym, quad)?.value), s0, 1e-3)
}
