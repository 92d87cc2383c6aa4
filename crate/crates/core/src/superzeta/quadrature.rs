//! Double-exponential and adaptive Gauss-Kronrod quadrature for the Mellin-type
//! integrals of the engine. Integrands take the distance from the left
//! endpoint so that endpoint singularities like y^{-0.9} stay accurate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    DoubleExponential,
    Adaptive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Split point between the finite and the infinite piece.
    pub y0: f64,
    /// Maximum number of step halvings (double-exponential) or interval
    /// bisections budget / 64 (adaptive).
    pub max_level: usize,
    /// Absolute tolerance on each piece.
    pub tol: f64,
    /// Half-width of the t-range of the tanh-sinh map.
    pub t_max_finite: f64,
    /// Half-width of the t-range of the exp-sinh map; sets the cutoff Y.
    pub t_max_infinite: f64,
    pub scheme: Scheme,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            y0: 1.0,
            max_level: 9,
            tol: 1e-13,
            t_max_finite: 6.5,
            t_max_infinite: 4.5,
            scheme: Scheme::DoubleExponential,
        }
    }
}

impl QuadratureSpec {
    pub fn adaptive() -> Self {
        QuadratureSpec {
            scheme: Scheme::Adaptive,
            ..Default::default()
        }
    }

    /// Effective upper cutoff of the infinite piece.
    pub fn cutoff(&self) -> f64 {
        self.y0 + (std::f64::consts::FRAC_PI_2 * self.t_max_infinite.sinh()).exp()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.y0 > 0.0
            && self.tol > 0.0
            && self.t_max_finite > 1.0
            && self.t_max_infinite > 1.0)
        {
            return Err(Error::Config(format!("invalid quadrature spec {self:?}")));
        }
        if self.max_level == 0 || self.max_level > 16 {
            return Err(Error::Config(format!(
                "max_level {} outside 1..=16",
                self.max_level
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

impl std::ops::Add for QuadResult {
    type Output = QuadResult;
    fn add(self, o: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + o.value,
            error: self.error + o.error,
            evaluations: self.evaluations + o.evaluations,
        }
    }
}

fn finite_or_err(v: Complex64, what: &str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Convergence(format!(
            "non-finite integrand sum in {what}"
        )))
    }
}

/// Runs level refinement given a node-sum closure for offsets `k*h`.
fn refine<F>(spec: &QuadratureSpec, t_max: f64, mut node: F, what: &str) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut h = 0.5;
    let mut evals = 0usize;
    let n0 = (t_max / h).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n0..=n0 {
        sum += node(k as f64 * h)?;
        evals += 1;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for level in 1..=spec.max_level {
        h *= 0.5;
        let n = (t_max / h).ceil() as i64;
        let mut k = -n + if n % 2 == 0 { 1 } else { 0 };
        if k % 2 == 0 {
            k += 1;
        }
        while k <= n {
            sum += node(k as f64 * h)?;
            evals += 1;
            k += 2;
        }
        let next = finite_or_err(sum * h, what)?;
        error = (next - estimate).norm();
        estimate = next;
        if level >= 3 && error <= spec.tol.max(1e-15 * estimate.norm()) {
            break;
        }
    }
    Ok(QuadResult {
        value: estimate,
        error,
        evaluations: evals,
    })
}

/// Integral over [a, b] of f, where f receives (x, x - a).
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    let len = b - a;
    let half_pi = std::f64::consts::FRAC_PI_2;
    refine(
        spec,
        spec.t_max_finite,
        |t| {
            let u = half_pi * t.sinh();
            let ch = u.cosh();
            let w = len * std::f64::consts::PI * t.cosh() / (4.0 * ch * ch);
            if !(w > 1e-300) || !w.is_finite() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            // distance from a, computed without cancellation for t < 0
            let da = len / (1.0 + (-2.0 * u).exp());
            if !(da > 0.0) || da >= len {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(f(a + da, da)? * w)
        },
        "tanh-sinh",
    )
}

/// Integral over [a, inf) of f, where f receives (x, x - a).
pub fn exp_sinh<F>(f: F, a: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    refine(
        spec,
        spec.t_max_infinite,
        |t| {
            let e = (half_pi * t.sinh()).exp();
            let w = half_pi * t.cosh() * e;
            if !(e > 1e-300) || !w.is_finite() || !e.is_finite() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let v = f(a + e, e)?;
            if v.re == 0.0 && v.im == 0.0 {
                return Ok(v);
            }
            Ok(v * w)
        },
        "exp-sinh",
    )
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(c)?;
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    for j in 0..7 {
        let dx = hl * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        rk += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            rg += (f1 + f2) * WG[j / 2];
        }
    }
    Ok((rk * hl, ((rk - rg) * hl).norm()))
}

fn adaptive_gk<F>(f: F, a: f64, b: f64, tol: f64, budget: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (v, e) = gk15(&f, a, b)?;
    let mut pieces = vec![(a, b, v, e)];
    let mut evals = 15;
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.3).sum();
        if total_err <= tol || pieces.len() >= budget {
            break;
        }
        let (idx, _) =
            pieces.iter().enumerate().fold(
                (0, -1.0),
                |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc },
            );
        let (pa, pb, _, _) = pieces.swap_remove(idx);
        let m = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&f, pa, m)?;
        let (v2, e2) = gk15(&f, m, pb)?;
        evals += 30;
        pieces.push((pa, m, v1, e1));
        pieces.push((m, pb, v2, e2));
    }
    let value = pieces.iter().fold(Complex64::new(0.0, 0.0), |s, p| s + p.2);
    let error = pieces.iter().map(|p| p.3).sum();
    Ok(QuadResult {
        value: finite_or_err(value, "gauss-kronrod")?,
        error,
        evaluations: evals,
    })
}

/// Integral over [0, inf) of f(y), split at `spec.y0`. The closure receives y.
pub fn integrate_half_line<F>(f: F, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    spec.validate()?;
    match spec.scheme {
        Scheme::DoubleExponential => {
            let a = tanh_sinh(|_, d| f(d), 0.0, spec.y0, spec)?;
            let b = exp_sinh(|x, _| f(x), spec.y0, spec)?;
            Ok(a + b)
        }
        Scheme::Adaptive => {
            let budget = 64 * spec.max_level;
            let a = adaptive_gk(&f, 0.0, spec.y0, spec.tol, budget)?;
            // y = y0 + t/(1-t)
            let y0 = spec.y0;
            let b = adaptive_gk(
                |t: f64| {
                    if t >= 1.0 {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    let om = 1.0 - t;
                    Ok(f(y0 + t / om)? / (om * om))
                },
                0.0,
                1.0,
                spec.tol,
                budget,
            )?;
            Ok(a + b)
        }
    }
}

/// Integral over [0, b] with a possible singularity at 0.
pub fn integrate_from_zero<F>(f: F, b: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    spec.validate()?;
    match spec.scheme {
        Scheme::DoubleExponential => tanh_sinh(|_, d| f(d), 0.0, b, spec),
        Scheme::Adaptive => adaptive_gk(f, 0.0, b, spec.tol, 64 * spec.max_level),
    }
}

/// Integral over [a, inf) of a decaying integrand.
pub fn integrate_to_infinity<F>(f: F, a: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    spec.validate()?;
    match spec.scheme {
        Scheme::DoubleExponential => exp_sinh(|x, _| f(x), a, spec),
        Scheme::Adaptive => adaptive_gk(
            |t: f64| {
                if t >= 1.0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let om = 1.0 - t;
                Ok(f(a + t / om)? / (om * om))
            },
            0.0,
            1.0,
            spec.tol,
            64 * spec.max_level,
        ),
    }
}
