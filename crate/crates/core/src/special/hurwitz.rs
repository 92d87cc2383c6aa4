use num_complex::Complex;
use num_traits::{One, Zero};

use super::cx::{self, C};
use super::gamma::{default_policy, nonpositive_integer, shift_count};
use super::precision::PrecisionPolicy;
use super::real::{bernoulli_real, Real};
use crate::error::{Error, Result};

fn check_args<T: Real>(s: C<T>, z: C<T>) -> Result<()> {
    if s.im.is_zero() && s.re == T::one() {
        return Err(Error::pole("hurwitz_zeta at s = 1"));
    }
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::domain(format!(
            "hurwitz_zeta needs z outside {{0,-1,..}}, got {n}"
        )));
    }
    Ok(())
}

fn em_split<T: Real>(s: C<T>, z: C<T>, policy: &PrecisionPolicy) -> Result<usize> {
    let by_s = cx::abs(s).to_f64().ceil() as usize;
    let by_z = shift_count(z.re.to_f64(), policy.shift_threshold)?;
    Ok(by_s.max(by_z).max(10))
}

/// Hurwitz zeta by Euler-Maclaurin summation.
pub fn hurwitz_zeta<T: Real>(s: C<T>, z: C<T>) -> Result<C<T>> {
    hurwitz_zeta_with(s, z, &default_policy::<T>())
}

pub fn hurwitz_zeta_with<T: Real>(s: C<T>, z: C<T>, policy: &PrecisionPolicy) -> Result<C<T>> {
    check_args(s, z)?;
    let m = em_split(s, z, policy)?;
    let mut sum = C::<T>::zero();
    for k in 0..m {
        sum = sum + cx::pow(z + cx::real(T::of(k as f64)), -s);
    }
    let one = C::<T>::one();
    let w = z + cx::real(T::of(m as f64));
    let w_s = cx::pow(w, -s);
    sum = sum + w * w_s / (s - one) + w_s * T::of(0.5);
    let inv = one / w;
    let inv2 = inv * inv;
    let mut poch = s;
    let mut wp = w_s * inv;
    let mut fact = T::of(2.0);
    for j in 1..=policy.series_order {
        let c = bernoulli_real::<T>(2 * j) / fact;
        sum = sum + poch * wp * c;
        let a = T::of((2 * j - 1) as f64);
        let b = T::of((2 * j) as f64);
        poch = poch * (s + cx::real(a)) * (s + cx::real(b));
        wp = wp * inv2;
        fact *= T::of(((2 * j + 1) * (2 * j + 2)) as f64);
    }
    Ok(sum)
}

/// d/ds zeta_H(s, z), differentiating every Euler-Maclaurin term analytically.
pub fn hurwitz_zeta_ds<T: Real>(s: C<T>, z: C<T>) -> Result<C<T>> {
    hurwitz_zeta_ds_with(s, z, &default_policy::<T>())
}

pub fn hurwitz_zeta_ds_with<T: Real>(s: C<T>, z: C<T>, policy: &PrecisionPolicy) -> Result<C<T>> {
    check_args(s, z)?;
    let m = em_split(s, z, policy)?;
    let mut sum = C::<T>::zero();
    for k in 0..m {
        let t = z + cx::real(T::of(k as f64));
        let lt = cx::ln(t);
        sum = sum - lt * cx::exp(-s * lt);
    }
    let one = C::<T>::one();
    let w = z + cx::real(T::of(m as f64));
    let lw = cx::ln(w);
    let w_s = cx::exp(-s * lw);
    let sm1 = s - one;
    sum = sum - w * w_s * (lw / sm1 + one / (sm1 * sm1));
    sum = sum - lw * w_s * T::of(0.5);
    let inv = one / w;
    let inv2 = inv * inv;
    // (p, dp) = ((s)_{2j-1}, d/ds (s)_{2j-1})
    let mut p = s;
    let mut dp = one;
    let mut wp = w_s * inv;
    let mut fact = T::of(2.0);
    for j in 1..=policy.series_order {
        let c = bernoulli_real::<T>(2 * j) / fact;
        sum = sum + wp * (dp - p * lw) * c;
        for off in [2 * j - 1, 2 * j] {
            let f = s + cx::real(T::of(off as f64));
            dp = dp * f + p;
            p = p * f;
        }
        wp = wp * inv2;
        fact *= T::of(((2 * j + 1) * (2 * j + 2)) as f64);
    }
    Ok(sum)
}

/// Milnor gamma Gamma_r(z) = exp(d/dw zeta_H(w, z) at w = 1 - r), as a logarithm.
pub fn log_milnor_gamma<T: Real>(r: C<T>, z: C<T>) -> Result<C<T>> {
    if r.im.is_zero() && r.re.is_zero() {
        return Err(Error::pole("milnor_gamma at r = 0"));
    }
    hurwitz_zeta_ds(C::<T>::one() - r, z)
}

pub fn milnor_gamma<T: Real>(r: C<T>, z: C<T>) -> Result<C<T>> {
    Ok(cx::exp(log_milnor_gamma(r, z)?))
}

/// Riemann zeta'(s) as the Hurwitz derivative at z = 1.
pub fn zeta_prime(s: Complex<f64>) -> Result<Complex<f64>> {
    hurwitz_zeta_ds(s, Complex::new(1.0, 0.0))
}
