use num_complex::Complex;
use num_traits::{One, Zero};

use super::cx::{self, C};
use super::precision::PrecisionPolicy;
use super::real::{bernoulli_real, Real};
use crate::error::{Error, Result};

const MAX_SHIFT: f64 = 1.0e7;

pub(crate) fn default_policy<T: Real>() -> PrecisionPolicy {
    PrecisionPolicy::for_bits(T::BITS)
}

/// Returns `Some(-n)` when `z` is exactly a non-positive integer.
pub(crate) fn nonpositive_integer<T: Real>(z: C<T>) -> Option<i64> {
    if !z.im.is_zero() {
        return None;
    }
    let re = z.re;
    if re > T::zero() {
        return None;
    }
    if re.floor() == re {
        Some(re.to_f64() as i64)
    } else {
        None
    }
}

pub(crate) fn shift_count(re: f64, threshold: f64) -> Result<usize> {
    let n = (threshold - re).ceil().max(0.0);
    if n > MAX_SHIFT || !n.is_finite() {
        return Err(Error::Budget(format!(
            "recurrence shift of {n} steps needed for Re z = {re}"
        )));
    }
    Ok(n as usize)
}

fn stirling_tail<T: Real>(w: C<T>, m: usize) -> C<T> {
    // sum_{k=1}^m B_{2k} / (2k(2k-1) w^{2k-1})
    let inv = C::<T>::one() / w;
    let inv2 = inv * inv;
    let mut p = inv;
    let mut acc = C::zero();
    for k in 1..=m {
        let c = bernoulli_real::<T>(2 * k) / T::of((2 * k * (2 * k - 1)) as f64);
        acc = acc + p * c;
        p = p * inv2;
    }
    acc
}

/// Principal log Gamma: analytic on C minus (-inf, 0], real on the positive axis.
pub fn log_gamma<T: Real>(z: C<T>) -> Result<C<T>> {
    log_gamma_with(z, &default_policy::<T>())
}

pub fn log_gamma_with<T: Real>(z: C<T>, policy: &PrecisionPolicy) -> Result<C<T>> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::pole(format!("log_gamma at z = {n}")));
    }
    let n = shift_count(z.re.to_f64(), policy.shift_threshold)?;
    let w = z + cx::real(T::of(n as f64));
    let half = T::of(0.5);
    let mut v = (w - cx::real(half)) * cx::ln(w) - w
        + cx::real(half * T::ln_2pi())
        + stirling_tail(w, policy.series_order);
    for k in 0..n {
        v = v - cx::ln(z + cx::real(T::of(k as f64)));
    }
    Ok(v)
}

/// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
pub fn reciprocal_gamma<T: Real>(z: C<T>) -> Result<C<T>> {
    if nonpositive_integer(z).is_some() {
        return Ok(C::zero());
    }
    Ok(cx::exp(-log_gamma(z)?))
}

/// Gamma(a) / Gamma(b), resolving coincident poles by their limiting ratio.
pub fn gamma_ratio<T: Real>(a: C<T>, b: C<T>) -> Result<C<T>> {
    match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(m), Some(n)) => {
            // Gamma(-m + e)/Gamma(-n + e) -> (-1)^(m-n) n! / m!
            let (m, n) = (-m, -n);
            let mut r = T::one();
            if m >= n {
                for k in (n + 1)..=m {
                    r /= T::of(k as f64);
                }
            } else {
                for k in (m + 1)..=n {
                    r *= T::of(k as f64);
                }
            }
            if (m - n).rem_euclid(2) == 1 {
                r = -r;
            }
            Ok(cx::real(r))
        }
        (Some(m), None) => Err(Error::pole(format!("Gamma({m}) in numerator"))),
        (None, Some(_)) => Ok(C::zero()),
        (None, None) => {
            let d = b - a;
            if d.im.is_zero() && d.re.floor() == d.re && d.re.abs().to_f64() <= 64.0 {
                // Pochhammer product when b - a is a small integer
                let k = d.re.to_f64() as i64;
                let mut p = C::<T>::one();
                if k >= 0 {
                    for j in 0..k {
                        p = p * (a + cx::real(T::of(j as f64)));
                    }
                    Ok(C::<T>::one() / p)
                } else {
                    for j in 0..(-k) {
                        p = p * (b + cx::real(T::of(j as f64)));
                    }
                    Ok(p)
                }
            } else {
                Ok(cx::exp(log_gamma(a)? - log_gamma(b)?))
            }
        }
    }
}

/// psi^(n)(z). Evaluated by upward recurrence and the asymptotic series of
/// the polygamma function itself, independently of the Hurwitz routine.
pub fn polygamma<T: Real>(n: u32, z: C<T>) -> Result<C<T>> {
    polygamma_with(n, z, &default_policy::<T>())
}

pub fn polygamma_with<T: Real>(n: u32, z: C<T>, policy: &PrecisionPolicy) -> Result<C<T>> {
    if let Some(k) = nonpositive_integer(z) {
        return Err(Error::pole(format!("polygamma({n}) at z = {k}")));
    }
    let threshold = policy.shift_threshold + n as f64;
    let shift = shift_count(z.re.to_f64(), threshold)?;
    let w = z + cx::real(T::of(shift as f64));
    let m = policy.series_order;
    let nf = n as usize;
    let inv = C::<T>::one() / w;
    let inv2 = inv * inv;
    let mut fact = vec![T::one(); 2 * m + nf + 2];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * T::of(i as f64);
    }
    let sign = if n % 2 == 1 { T::one() } else { -T::one() };
    let asym = if n == 0 {
        let mut acc = cx::ln(w) - inv * T::of(0.5);
        let mut p = inv2;
        for k in 1..=m {
            acc = acc - p * (bernoulli_real::<T>(2 * k) / T::of((2 * k) as f64));
            p = p * inv2;
        }
        acc
    } else {
        let winv_n = cx::powi(inv, n as i32);
        let mut acc = winv_n * fact[nf - 1] + winv_n * inv * (fact[nf] * T::of(0.5));
        let mut p = winv_n * inv2;
        for k in 1..=m {
            let c = bernoulli_real::<T>(2 * k) * fact[2 * k + nf - 1] / fact[2 * k];
            acc = acc + p * c;
            p = p * inv2;
        }
        acc * sign
    };
    // psi^(n)(z) = psi^(n)(z + N) - (-1)^n n! sum_{k<N} (z+k)^{-(n+1)}
    let mut corr = C::<T>::zero();
    for k in 0..shift {
        let t = z + cx::real(T::of(k as f64));
        corr = corr + cx::powi(C::<T>::one() / t, n as i32 + 1);
    }
    let sgn_n = if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    Ok(asym - corr * (sgn_n * fact[nf]))
}

pub fn digamma<T: Real>(z: C<T>) -> Result<C<T>> {
    polygamma(0, z)
}

/// Convenience for f64 callers.
pub fn lgamma(z: Complex<f64>) -> Result<Complex<f64>> {
    log_gamma(z)
}
