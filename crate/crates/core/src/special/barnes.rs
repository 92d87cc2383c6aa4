use num_traits::{One, Zero};

use super::cx::{self, C};
use super::gamma::{default_policy, log_gamma_with, nonpositive_integer, shift_count};
use super::precision::PrecisionPolicy;
use super::real::{bernoulli_real, Real};
use crate::error::{Error, Result};

/// log G(z+1) for the Barnes G-function.
///
/// Shifted to Re > threshold, evaluated asymptotically, and brought back by
/// `log G(w+1) = log G(w+n+1) - sum_{k=1}^n log Gamma(w+k)`. The branch is the
/// one continuous along that horizontal path, with principal pieces throughout,
/// so it is real on the positive axis and cut along (-inf, -1].
pub fn log_barnes_g<T: Real>(z: C<T>) -> Result<C<T>> {
    log_barnes_g_with(z, &default_policy::<T>())
}

pub fn log_barnes_g_with<T: Real>(z: C<T>, policy: &PrecisionPolicy) -> Result<C<T>> {
    if let Some(n) = nonpositive_integer(z) {
        if n <= -1 {
            return Err(Error::Zero {
                at: format!("G(z+1) at z = {n}"),
                multiplicity: (-n) as u32,
            });
        }
    }
    let n = shift_count(z.re.to_f64(), policy.shift_threshold)?;
    let w = z + cx::real(T::of(n as f64));
    let mut v = barnes_asymptotic(w, policy.series_order);
    if n > 0 {
        // log Gamma(z+n), then downward
        let mut lg = log_gamma_with(w, policy)?;
        for k in (1..=n).rev() {
            v = v - lg;
            if k > 1 {
                lg = lg - cx::ln(z + cx::real(T::of((k - 1) as f64)));
            }
        }
    }
    Ok(v)
}

/// w^2/2 (log w - 3/2) + w/2 log 2pi - log(w)/12 + zeta'(-1)
///   + sum_k B_{2k+2} / (4k(k+1) w^{2k})
pub(crate) fn barnes_asymptotic<T: Real>(w: C<T>, m: usize) -> C<T> {
    let lw = cx::ln(w);
    let half = T::of(0.5);
    let mut v = w * w * half * (lw - cx::real(T::of(1.5))) + w * (half * T::ln_2pi())
        - lw / T::of(12.0)
        + cx::real(T::zeta_prime_m1());
    let inv2 = C::<T>::one() / (w * w);
    let mut p = inv2;
    for k in 1..=m {
        let c = bernoulli_real::<T>(2 * k + 2) / T::of((4 * k * (k + 1)) as f64);
        v = v + p * c;
        p = p * inv2;
    }
    v
}

pub fn barnes_g<T: Real>(z: C<T>) -> Result<C<T>> {
    // G(z) = exp(log G((z-1)+1)); zero at non-positive integers
    let w = z - C::<T>::one();
    match log_barnes_g(w) {
        Ok(v) => Ok(cx::exp(v)),
        Err(Error::Zero { .. }) => Ok(C::zero()),
        Err(e) => Err(e),
    }
}

/// log G_1(z) = (vol/2pi) [z log 2pi + 2 log G(z+1) - log Gamma(z)].
pub fn log_g1<T: Real>(z: C<T>, vol: f64) -> Result<C<T>> {
    if !(vol > 0.0) || !vol.is_finite() {
        return Err(Error::domain(format!("volume must be positive, got {vol}")));
    }
    let weight = vol / (2.0 * std::f64::consts::PI);
    if let Some(n) = nonpositive_integer(z) {
        let n = (-n) as f64;
        return Err(Error::Zero {
            at: format!("G1 at z = {}", -n),
            multiplicity: (weight * (2.0 * n + 1.0)).round() as u32,
        });
    }
    let lg = log_barnes_g(z)?;
    let lgam = super::gamma::log_gamma(z)?;
    Ok((z * T::ln_2pi() + lg * T::of(2.0) - lgam) * T::of(weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::dd::Dd;
    use crate::special::gamma::log_gamma;
    use num_complex::Complex;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn integer_values() {
        // G(n+1) = prod_{k<n} k!  ; G(4) = 1! 2! = 2, G(5) = 12, G(6) = 288
        for (z, g) in [
            (3.0, 2.0f64),
            (4.0, 12.0),
            (5.0, 288.0),
            (1.0, 1.0),
            (0.0, 1.0),
        ] {
            let v = log_barnes_g(c(z, 0.0)).unwrap();
            assert!((v.re - g.ln()).abs() < 1e-13 && v.im.abs() < 1e-14, "z={z}");
        }
    }

    #[test]
    fn functional_equation() {
        // G(z+2) = Gamma(z+1) G(z+1)
        for z in [c(0.3, 0.0), c(-2.6, 0.4), c(4.2, -3.0), c(25.0, 7.0)] {
            let lhs = log_barnes_g(z + c(1.0, 0.0)).unwrap();
            let rhs = log_gamma(z + c(1.0, 0.0)).unwrap() + log_barnes_g(z).unwrap();
            assert!((lhs - rhs).norm() < 1e-12, "z={z}");
        }
    }

    #[test]
    fn reference_values() {
        let v = log_barnes_g(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.0669318884350047042740286858682).abs() < 5e-13);
        // G(3.3 + 1.2i), compared through exp to sidestep log branches
        let v = cx::exp(log_barnes_g(c(2.3, 1.2)).unwrap());
        let want = cx::exp(c(
            -0.511333337614683086625693076289,
            0.479922026700877836184768386722,
        ));
        assert!((v - want).norm() < 1e-13 * want.norm());
    }

    #[test]
    fn zeros_are_typed() {
        match log_barnes_g(c(-3.0, 0.0)) {
            Err(Error::Zero { multiplicity, .. }) => assert_eq!(multiplicity, 3),
            other => panic!("{other:?}"),
        }
        match log_g1(c(-2.0, 0.0), 4.0 * std::f64::consts::PI) {
            Err(Error::Zero { multiplicity, .. }) => assert_eq!(multiplicity, 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dd_agrees_with_f64() {
        let z = c(1.25, 0.75);
        let a = log_barnes_g(z).unwrap();
        let b = log_barnes_g(Complex::new(Dd::from_f64(1.25), Dd::from_f64(0.75))).unwrap();
        assert!((a.re - b.re.to_f64()).abs() < 1e-13);
        assert!((a.im - b.im.to_f64()).abs() < 1e-13);
        // tight reference in double-double: log G(3/2)
        let h = log_barnes_g(Complex::new(Dd::from_f64(0.5), Dd::ZERO)).unwrap();
        let want = Dd::new(0.06693188843500471, -3.475136534452535e-18);
        assert!((h.re - want).abs().to_f64() < 1e-28);
    }

    #[test]
    fn g1_at_one() {
        // G_1(1) = (2 pi)^{vol/2pi}
        let vol = 4.0 * std::f64::consts::PI;
        let v = log_g1(c(1.0, 0.0), vol).unwrap();
        assert!((v.re - 2.0 * (2.0 * std::f64::consts::PI).ln()).abs() < 1e-13);
    }
}
