//! Expansion data for the two order-two families used downstream: the Barnes
//! function G(z+1) and G_1(z) = G(z+1)^{2w} Gamma(z)^{-w} (2pi)^{wz}, w = vol/2pi.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::asymptotic::{AlgebraicTerm, AsymptoticData, Remainder};
use super::zeros::ZeroSequence;
use crate::error::{Error, Result};
use crate::special::real::{bernoulli_real, Real};
use crate::special::{log_barnes_g, log_g1, polygamma};

/// Beyond this modulus the remainder is summed from its asymptotic series.
const SWITCH_RADIUS: f64 = 14.0;
const MAX_TERMS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    Barnes,
    G1 { vol: f64 },
}

struct FamilyRemainder {
    kind: Kind,
    a2: f64,
    a1: f64,
    a0: f64,
    b2: f64,
    b1: f64,
    b0: f64,
    terms: Vec<AlgebraicTerm>,
}

impl FamilyRemainder {
    fn exact_log(&self, z: Complex64) -> Result<Complex64> {
        match self.kind {
            Kind::Barnes => log_barnes_g(z),
            Kind::G1 { vol } => log_g1(z, vol),
        }
    }

    fn exact_third(&self, z: Complex64) -> Result<Complex64> {
        let p1 = polygamma(1, z)?;
        let p2 = polygamma(2, z)?;
        Ok(match self.kind {
            Kind::Barnes => p1 * 2.0 + z * p2,
            Kind::G1 { vol } => (p1 * 4.0 + (z * 2.0 - 1.0) * p2) * (vol / (2.0 * PI)),
        })
    }

    fn main_value(&self, z: Complex64) -> Complex64 {
        let lz = z.ln();
        z * z * (lz - 1.5) * self.a2
            + z * z * self.b2
            + z * (lz - 1.0) * self.a1
            + z * self.b1
            + lz * self.a0
            + self.b0
    }

    fn main_third(&self, z: Complex64) -> Complex64 {
        let inv = 1.0 / z;
        inv * (2.0 * self.a2) - inv * inv * self.a1 + inv * inv * inv * (2.0 * self.a0)
    }

    /// sum over k >= n of a_k z^{mu_k} (deriv = 0) or its third derivative,
    /// stopped at the smallest term.
    fn series(&self, n: usize, z: Complex64, third: bool) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev = f64::INFINITY;
        for t in &self.terms[n.min(self.terms.len())..] {
            let mu = t.exponent;
            let c = if third {
                mu * (mu - 1.0) * (mu - 2.0)
            } else {
                1.0
            };
            let term = z.powf(if third { mu - 3.0 } else { mu }) * (t.coeff * c);
            let size = term.norm();
            if size > prev {
                break;
            }
            acc += term;
            if size < 1e-18 * acc.norm() {
                break;
            }
            prev = size;
        }
        acc
    }

    fn use_series(&self, z: Complex64) -> bool {
        z.norm() >= SWITCH_RADIUS && z.arg().abs() < 0.75 * PI
    }
}

impl Remainder for FamilyRemainder {
    fn value(&self, n: usize, z: Complex64) -> Result<Complex64> {
        if self.use_series(z) {
            return Ok(self.series(n, z, false));
        }
        let mut v = self.exact_log(z)? - self.main_value(z);
        for t in &self.terms[..n.min(self.terms.len())] {
            v -= z.powf(t.exponent) * t.coeff;
        }
        Ok(v)
    }

    fn third_derivative(&self, n: usize, z: Complex64) -> Result<Complex64> {
        if self.use_series(z) {
            return Ok(self.series(n, z, true));
        }
        let mut v = self.exact_third(z)? - self.main_third(z);
        for t in &self.terms[..n.min(self.terms.len())] {
            let mu = t.exponent;
            v -= z.powf(mu - 3.0) * (t.coeff * mu * (mu - 1.0) * (mu - 2.0));
        }
        Ok(v)
    }

    fn decay(&self, n: usize) -> f64 {
        self.terms.get(n).map_or(f64::NEG_INFINITY, |t| t.exponent)
    }
}

fn assemble(rem: FamilyRemainder) -> AsymptoticData {
    AsymptoticData {
        a2_tilde: rem.a2,
        b2: rem.b2,
        a1_tilde: rem.a1,
        b1: rem.b1,
        a0_tilde: rem.a0,
        b0: rem.b0,
        terms: rem.terms.clone(),
        remainder: Arc::new(rem),
        sector_angle: 0.95 * PI,
    }
}

/// Expansion of log G(z+1).
pub fn barnes_asymptotics() -> AsymptoticData {
    let terms = (1..=MAX_TERMS)
        .map(|k| AlgebraicTerm {
            coeff: bernoulli_real::<f64>(2 * k + 2) / (4.0 * (k * (k + 1)) as f64),
            exponent: -2.0 * k as f64,
        })
        .collect();
    assemble(FamilyRemainder {
        kind: Kind::Barnes,
        a2: 0.5,
        a1: 0.0,
        a0: -1.0 / 12.0,
        b2: 0.0,
        b1: 0.5 * <f64 as Real>::ln_2pi(),
        b0: <f64 as Real>::zeta_prime_m1(),
        terms,
    })
}

/// Expansion of log G_1(z) for a surface of hyperbolic area `vol`.
pub fn g1_asymptotics(vol: f64) -> Result<AsymptoticData> {
    if !(vol > 0.0 && vol.is_finite()) {
        return Err(Error::domain(format!("volume must be positive, got {vol}")));
    }
    let w = vol / (2.0 * PI);
    let ln2pi = <f64 as Real>::ln_2pi();
    let terms = (1..=MAX_TERMS)
        .map(|k| {
            let coeff = if k % 2 == 1 {
                let j = k.div_ceil(2);
                -w * bernoulli_real::<f64>(2 * j) / ((2 * j - 1) * 2 * j) as f64
            } else {
                let m = k / 2;
                w * bernoulli_real::<f64>(2 * m + 2) / (2 * m * (m + 1)) as f64
            };
            AlgebraicTerm {
                coeff,
                exponent: -(k as f64),
            }
        })
        .collect();
    Ok(assemble(FamilyRemainder {
        kind: Kind::G1 { vol },
        a2: w,
        a1: -w,
        a0: vol / (6.0 * PI),
        b2: 0.0,
        b1: (vol / PI) * ln2pi,
        b0: w * (2.0 * <f64 as Real>::zeta_prime_m1() - 0.5 * ln2pi),
        terms,
    }))
}

/// Zeros and expansion of G(z+1).
pub fn barnes_family() -> (ZeroSequence, AsymptoticData) {
    (ZeroSequence::barnes(), barnes_asymptotics())
}

/// Zeros and expansion of G_1(z).
pub fn g1_family(vol: f64) -> Result<(ZeroSequence, AsymptoticData)> {
    Ok((ZeroSequence::g1(vol)?, g1_asymptotics(vol)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expansion_matches_exact_log_g1() {
        let vol = 2.0 * PI;
        let data = g1_asymptotics(vol).unwrap();
        data.validate().unwrap();
        for z in [c(20.0, 0.0), c(15.0, 9.0), c(-12.0, 14.0)] {
            let rec = data.log_delta(z, 8).unwrap();
            let exact = log_g1(z, vol).unwrap();
            // branches of log may differ by 2 pi i multiples off the axis
            let d = rec - exact;
            let k = (d.im / (2.0 * PI)).round();
            assert!(
                (d - c(0.0, 2.0 * PI * k)).norm() < 1e-10 * exact.norm().max(1.0),
                "z={z}: {d}"
            );
        }
    }

    #[test]
    fn routes_agree_near_switch() {
        let data = barnes_asymptotics();
        let rem = &data.remainder;
        for n in [1, 2, 3] {
            let z = c(SWITCH_RADIUS + 1e-9, 0.0);
            let z2 = c(SWITCH_RADIUS - 1e-9, 0.0);
            let a = rem.value(n, z).unwrap();
            let b = rem.value(n, z2).unwrap();
            assert!((a - b).norm() < 1e-12, "n={n}: {a} {b}");
            let a = rem.third_derivative(n, z).unwrap();
            let b = rem.third_derivative(n, z2).unwrap();
            assert!((a - b).norm() < 1e-14, "n={n}: {a} {b}");
        }
    }

    #[test]
    fn third_derivative_matches_finite_difference() {
        let data = g1_asymptotics(3.0).unwrap();
        let rem = &data.remainder;
        let z = c(2.5, 0.8);
        let f = |t: Complex64| rem.value(2, t).unwrap();
        // Cauchy integral on a circle of radius r: f''' = 3!/(2 pi r^3) int f e^{-3it} dt
        let (r, m) = (0.5, 128);
        let mut fd = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
            fd += f(z + e * r) / (e * e * e);
        }
        fd *= 6.0 / (m as f64 * r * r * r);
        let an = rem.third_derivative(2, z).unwrap();
        assert!((fd - an).norm() < 1e-10, "{fd} vs {an}");
    }

    #[test]
    fn declared_decay_holds() {
        let data = g1_asymptotics(2.0 * PI).unwrap();
        let radii = [2.0, 5.0, 10.0, 20.0, 40.0];
        let angles = [0.0, 0.5, -1.0, 2.0];
        for n in [1, 2, 4] {
            let k = data.decay_constant(n, &radii, &angles).unwrap();
            assert!(k.is_finite() && k < 10.0, "n={n}: {k}");
        }
    }

    #[test]
    fn split_index_rule() {
        let data = g1_asymptotics(2.0 * PI).unwrap();
        // mu_k = -k; need mu < Re s - 1.5
        assert_eq!(data.split_index(0.0).unwrap(), 1);
        assert_eq!(data.split_index(-0.5).unwrap(), 2);
        assert_eq!(data.split_index(2.5).unwrap(), 0);
    }
}
