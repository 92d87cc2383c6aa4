use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SuperzetaValue;
use crate::error::{Error, Result};
use crate::special::real::bernoulli_real;

/// A zero y of multiplicity m. Multiplicities are real weights: the G_1
/// family carries (vol/2pi)(2n+1) at -n, which need not be an integer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub location: Complex64,
    pub multiplicity: f64,
}

/// Zeros at -n for every n >= start, with multiplicity sum_j coeffs[j] n^j.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeTail {
    pub start: u64,
    pub coeffs: Vec<f64>,
}

impl LatticeTail {
    pub fn multiplicity(&self, n: u64) -> f64 {
        let x = n as f64;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSequence {
    pub entries: Vec<ZeroEntry>,
    pub tail: Option<LatticeTail>,
    /// Convergence exponent bound: sum m_k |y_k|^{-s} converges for Re s above it.
    pub growth_exponent: f64,
}

const BRANCH_EPS: f64 = 0.0;
const EM_TERMS: usize = 12;
const MAX_DIRECT: u64 = 10_000_000;

impl ZeroSequence {
    pub fn finite(entries: Vec<ZeroEntry>) -> Self {
        ZeroSequence {
            entries,
            tail: None,
            growth_exponent: 0.0,
        }
    }

    pub fn empty() -> Self {
        Self::finite(Vec::new())
    }

    /// Zeros of G(z+1): -n with multiplicity n, n >= 1.
    pub fn barnes() -> Self {
        ZeroSequence {
            entries: Vec::new(),
            tail: Some(LatticeTail {
                start: 1,
                coeffs: vec![0.0, 1.0],
            }),
            growth_exponent: 2.0,
        }
    }

    /// Zeros of G_1(z): -n with multiplicity (vol/2pi)(2n+1), n >= 0.
    pub fn g1(vol: f64) -> Result<Self> {
        if !(vol > 0.0 && vol.is_finite()) {
            return Err(Error::domain(format!("volume must be positive, got {vol}")));
        }
        let w = vol / (2.0 * std::f64::consts::PI);
        Ok(ZeroSequence {
            entries: Vec::new(),
            tail: Some(LatticeTail {
                start: 0,
                coeffs: vec![w, 2.0 * w],
            }),
            growth_exponent: 2.0,
        })
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            if !(e.multiplicity > 0.0 && e.multiplicity.is_finite()) {
                return Err(Error::Negativity(format!(
                    "multiplicity {} at {}",
                    e.multiplicity, e.location
                )));
            }
            if !(e.location.re.is_finite() && e.location.im.is_finite()) {
                return Err(Error::domain("non-finite zero location"));
            }
        }
        if !(self.growth_exponent <= 2.0) {
            return Err(Error::domain(format!(
                "growth exponent {} exceeds 2",
                self.growth_exponent
            )));
        }
        if let Some(t) = &self.tail {
            if t.degree() + 1 > 2 {
                return Err(Error::domain(
                    "lattice tail multiplicity must have degree <= 1",
                ));
            }
            for n in t.start..t.start + 4 {
                if t.multiplicity(n) < 0.0 {
                    return Err(Error::Negativity(format!("tail multiplicity at -{n}")));
                }
            }
        }
        Ok(())
    }

    /// Checks z - y_k is off the closed negative axis for every zero.
    pub fn check_admissible(&self, z: Complex64) -> Result<()> {
        for e in &self.entries {
            let d = z - e.location;
            if d.im.abs() <= BRANCH_EPS && d.re <= 0.0 {
                return Err(Error::Branch(format!("z - y = {d} on the negative axis")));
            }
        }
        if let Some(t) = &self.tail {
            if z.im == 0.0 && z.re + t.start as f64 <= 0.0 {
                return Err(Error::Branch(format!("z = {z} meets the lattice zeros")));
            }
        }
        Ok(())
    }
}

/// sum_{m>=0} (w0+m)^{-sigma} for large Re w0, by Euler-Maclaurin with no
/// direct terms. Returns (value, size of the last correction).
fn em_tail(sigma: Complex64, w0: Complex64) -> (Complex64, f64) {
    let one = Complex64::new(1.0, 0.0);
    let ws = (-sigma * w0.ln()).exp();
    let mut acc = w0 * ws / (sigma - one) + ws * 0.5;
    let inv2 = one / (w0 * w0);
    let mut poch = sigma;
    let mut wp = ws / w0;
    let mut fact = 2.0;
    let mut last = 0.0;
    for j in 1..=EM_TERMS {
        let term = poch * wp * (bernoulli_real::<f64>(2 * j) / fact);
        acc += term;
        last = term.norm();
        poch = poch * (sigma + (2 * j - 1) as f64) * (sigma + (2 * j) as f64);
        wp *= inv2;
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
    }
    (acc, last)
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// sum_k m_k (z - y_k)^{-s} with principal powers, Re s > 2.
pub fn superzeta_direct(
    s: Complex64,
    z: Complex64,
    zeros: &ZeroSequence,
) -> Result<SuperzetaValue> {
    if !(s.re > 2.0) {
        return Err(Error::domain(format!(
            "direct superzeta sum needs Re s > 2, got {s}"
        )));
    }
    zeros.check_admissible(z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for e in &zeros.entries {
        let t = (-s * (z - e.location).ln()).exp() * e.multiplicity;
        mag += t.norm();
        sum += t;
    }
    let mut err = 0.0;
    if let Some(tail) = &zeros.tail {
        let deg = tail.degree();
        if s.re <= deg as f64 + 1.0 {
            return Err(Error::domain(format!(
                "tail of degree {deg} diverges at Re s = {}",
                s.re
            )));
        }
        let need = (30.0 + 2.0 * s.norm() - z.re).ceil().max(0.0);
        if need > MAX_DIRECT as f64 {
            return Err(Error::Budget(format!("direct sum of {need} terms")));
        }
        let n1 = tail.start.max(need as u64);
        for n in tail.start..n1 {
            let m = tail.multiplicity(n);
            if m == 0.0 {
                continue;
            }
            let t = (-s * (z + n as f64).ln()).exp() * m;
            mag += t.norm();
            sum += t;
        }
        // p(n) = sum_i q_i w^i with w = z + n
        let w0 = z + n1 as f64;
        for i in 0..=deg {
            let mut q = Complex64::new(0.0, 0.0);
            for j in i..=deg {
                q += (-z).powu((j - i) as u32) * (tail.coeffs[j] * binom(j, i));
            }
            if q == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (h, last) = em_tail(s - i as f64, w0);
            let t = q * h;
            mag += t.norm();
            err += q.norm() * last;
            sum += t;
        }
    }
    Ok(SuperzetaValue {
        value: sum,
        abs_error: err + 32.0 * f64::EPSILON * mag,
        method: super::Method::DirectSum,
    })
}

/// (log Delta_f)'''(z) = 2 Z_f(3, z).
pub fn log_delta_third_derivative(z: Complex64, zeros: &ZeroSequence) -> Result<Complex64> {
    Ok(superzeta_direct(Complex64::new(3.0, 0.0), z, zeros)?.value * 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hurwitz_zeta;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_zero() {
        let z = ZeroSequence::finite(vec![ZeroEntry {
            location: c(1.0, 0.0),
            multiplicity: 1.0,
        }]);
        let v = superzeta_direct(c(3.0, 0.0), c(2.0, 0.0), &z).unwrap();
        assert!((v.value - c(1.0, 0.0)).norm() < 1e-15);
        assert!(
            (log_delta_third_derivative(c(2.0, 0.0), &z).unwrap() - c(2.0, 0.0)).norm() < 1e-15
        );
        assert!(matches!(
            superzeta_direct(c(3.0, 0.0), c(0.5, 0.0), &z),
            Err(Error::Branch(_))
        ));
    }

    #[test]
    fn barnes_matches_hurwitz() {
        let zs = ZeroSequence::barnes();
        for (s, z) in [
            (c(3.0, 0.0), c(1.0, 0.0)),
            (c(2.5, 1.0), c(0.3, 0.7)),
            (c(4.2, -3.0), c(7.5, -2.0)),
        ] {
            let v = superzeta_direct(s, z, &zs).unwrap();
            let want = hurwitz_zeta(s - 1.0, z).unwrap() - z * hurwitz_zeta(s, z).unwrap();
            assert!(
                (v.value - want).norm() < 1e-12,
                "s={s} z={z}: {} vs {want}",
                v.value
            );
            assert!(v.abs_error < 1e-12);
        }
    }

    #[test]
    fn barnes_third_derivative_at_one() {
        // 2 [pi^2/6 - zeta(3)] by direct summation of 2 n/(1+n)^3
        let mut direct = 0.0;
        for n in 1..2_000_000u64 {
            let x = (n + 1) as f64;
            direct += 2.0 * n as f64 / (x * x * x);
        }
        // tail of 2/x^2 beyond 2e6 is ~1e-6; compare against the exact value
        let exact = 2.0 * (std::f64::consts::PI.powi(2) / 6.0 - 1.2020569031595942854);
        assert!((direct - exact).abs() < 2e-6);
        let v = log_delta_third_derivative(c(1.0, 0.0), &ZeroSequence::barnes()).unwrap();
        assert!((v.re - exact).abs() < 1e-13);
    }

    #[test]
    fn domain_and_empty() {
        assert!(matches!(
            superzeta_direct(c(2.0, 0.0), c(1.0, 0.0), &ZeroSequence::barnes()),
            Err(Error::Domain(_))
        ));
        let v = superzeta_direct(c(3.0, 0.0), c(1.0, 0.0), &ZeroSequence::empty()).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));
        assert!(ZeroSequence::g1(-1.0).is_err());
    }
}
