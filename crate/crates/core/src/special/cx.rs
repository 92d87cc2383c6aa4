//! Complex helpers over a generic [`Real`]. All multivalued functions use the
//! principal branch, and every complex power goes through [`pow`].

use num_complex::Complex;
use num_traits::{One, Zero};

use super::real::Real;

pub type C<T> = Complex<T>;

#[inline]
pub fn real<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn abs<T: Real>(z: C<T>) -> T {
    z.re.hypot(z.im)
}

#[inline]
pub fn arg<T: Real>(z: C<T>) -> T {
    z.im.atan2(z.re)
}

pub fn ln<T: Real>(z: C<T>) -> C<T> {
    Complex::new(abs(z).ln(), arg(z))
}

pub fn exp<T: Real>(z: C<T>) -> C<T> {
    let m = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(m * c, m * s)
}

/// Principal power `w^s = exp(s Log w)`.
pub fn pow<T: Real>(w: C<T>, s: C<T>) -> C<T> {
    if w.re.is_zero() && w.im.is_zero() {
        return C::zero();
    }
    exp(s * ln(w))
}

/// Integer power by repeated squaring.
pub fn powi<T: Real>(w: C<T>, n: i32) -> C<T> {
    let mut base = w;
    let mut e = n.unsigned_abs();
    let mut acc = C::<T>::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    if n < 0 {
        C::<T>::one() / acc
    } else {
        acc
    }
}

pub fn sin<T: Real>(z: C<T>) -> C<T> {
    let (s, c) = z.re.sin_cos();
    let ey = z.im.exp();
    let eny = T::one() / ey;
    let ch = (ey + eny) / T::of(2.0);
    let sh = (ey - eny) / T::of(2.0);
    Complex::new(s * ch, c * sh)
}

pub fn cos<T: Real>(z: C<T>) -> C<T> {
    let (s, c) = z.re.sin_cos();
    let ey = z.im.exp();
    let eny = T::one() / ey;
    let ch = (ey + eny) / T::of(2.0);
    let sh = (ey - eny) / T::of(2.0);
    Complex::new(c * ch, -(s * sh))
}

pub fn is_finite<T: Real>(z: C<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn to_c64<T: Real>(z: C<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<T: Real>(z: Complex<f64>) -> C<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}

/// Nearest integer to a real-axis point, if `z` sits on it within `tol`.
pub fn near_integer<T: Real>(z: C<T>, tol: f64) -> Option<i64> {
    let re = z.re.to_f64();
    let n = re.round();
    if (re - n).abs() <= tol && z.im.to_f64().abs() <= tol {
        Some(n as i64)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::dd::Dd;

    #[test]
    fn exp_ln_round_trip_dd() {
        let z = Complex::new(Dd::from_f64(-1.5), Dd::from_f64(2.25));
        let w = exp(ln(z));
        assert!(abs(w - z).to_f64() < 1e-30);
    }

    #[test]
    fn principal_branch_on_negative_axis() {
        let w = Complex::new(-4.0f64, 0.0);
        let r = pow(w, Complex::new(0.5, 0.0));
        assert!((r - Complex::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn sin_cos_complex() {
        let z = Complex::new(0.3f64, -1.1);
        let s = sin(z);
        let c = cos(z);
        let one = s * s + c * c;
        assert!((one - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!((s - z.sin()).norm() < 1e-15);
    }
}
