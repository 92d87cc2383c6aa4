//! Double-double real arithmetic (an unevaluated sum `hi + lo` of two f64).
//!
//! Gives roughly 106 bits of significand. Used where f64 cancellation is too
//! lossy, chiefly Hurwitz zeta at negative real part and Bernoulli polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_traits::{Num, One, Zero};

#[derive(Clone, Copy, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

pub const DD_EPS: f64 = 4.93038065763132e-32;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224646799147353207e-16,
    };
    pub const TWO_PI: Dd = Dd {
        hi: std::f64::consts::TAU,
        lo: 2.449293598294706414e-16,
    };
    pub const HALF_PI: Dd = Dd {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766036e-17,
    };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.319046813846299558e-17,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Renormalizes an arbitrary pair.
    #[inline]
    pub fn from_pair(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        p2 += self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Multiplies by an exact power of two.
    #[inline]
    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            Dd::from_pair(hi, self.lo.floor())
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::from_f64(0.5)).floor()
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let x = Dd::from_f64(self.hi.sqrt());
        x + (self - x.sqr()) / (x + x)
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let m = (self.hi / Dd::LN2.hi + 0.5).floor();
        let r = (self - Dd::LN2 * Dd::from_f64(m)).ldexp(-10);
        // Taylor series of exp(r) - 1 for |r| < 2^-10 ln 2
        let mut term = r;
        let mut sum = r;
        let mut k = 1.0;
        while k < 40.0 {
            k += 1.0;
            term = term * r / Dd::from_f64(k);
            sum += term;
            if term.hi.abs() <= 1e-34 * sum.hi.abs() {
                break;
            }
        }
        // (e^r - 1) doubled ten times via s -> 2s + s^2
        for _ in 0..10 {
            sum = sum.ldexp(1) + sum.sqr();
        }
        (sum + Dd::ONE).ldexp(m as i32)
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            if self.hi == 0.0 {
                return Dd::from_f64(f64::NEG_INFINITY);
            }
            return Dd::from_f64(f64::NAN);
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        let mut x = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            x = x + self * (-x).exp() - Dd::ONE;
        }
        x
    }

    /// sin and cos of a reduced argument |t| <= pi/4.
    fn sin_cos_reduced(t: Dd) -> (Dd, Dd) {
        let t2 = t.sqr();
        let mut s = t;
        let mut term = t;
        let mut k = 1.0;
        while k < 80.0 {
            term = -(term * t2) / Dd::from_f64((k + 1.0) * (k + 2.0));
            k += 2.0;
            s += term;
            if term.hi.abs() <= 1e-34 {
                break;
            }
        }
        let mut c = Dd::ONE;
        let mut term = Dd::ONE;
        let mut k = 0.0;
        while k < 80.0 {
            term = -(term * t2) / Dd::from_f64((k + 1.0) * (k + 2.0));
            k += 2.0;
            c += term;
            if term.hi.abs() <= 1e-34 {
                break;
            }
        }
        (s, c)
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        if self.hi == 0.0 {
            return (Dd::ZERO, Dd::ONE);
        }
        let k = (self / Dd::TWO_PI).round();
        let z = self - Dd::TWO_PI * k;
        let j = (z / Dd::HALF_PI).round();
        let t = z - Dd::HALF_PI * j;
        let (s, c) = Dd::sin_cos_reduced(t);
        match j.hi as i64 {
            0 => (s, c),
            1 => (c, -s),
            -1 => (-c, s),
            _ => (-s, -c),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn hypot(self, other: Dd) -> Dd {
        let a = self.abs();
        let b = other.abs();
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big.hi == 0.0 {
            return Dd::ZERO;
        }
        let r = small / big;
        big * (Dd::ONE + r.sqr()).sqrt()
    }

    pub fn atan2(self, x: Dd) -> Dd {
        let y = self;
        if x.hi == 0.0 && y.hi == 0.0 {
            return Dd::ZERO;
        }
        if x.hi == 0.0 {
            return if y.hi > 0.0 {
                Dd::HALF_PI
            } else {
                -Dd::HALF_PI
            };
        }
        if y.hi == 0.0 {
            return if x.hi > 0.0 { Dd::ZERO } else { Dd::PI };
        }
        let r = y.hypot(x);
        let xx = x / r;
        let yy = y / r;
        let mut z = Dd::from_f64(y.to_f64().atan2(x.to_f64()));
        for _ in 0..2 {
            let (sz, cz) = z.sin_cos();
            if xx.hi.abs() > yy.hi.abs() {
                z += (yy - sz) / cz;
            } else {
                z -= (xx - cz) / sz;
            }
        }
        z
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            Dd::ONE / acc
        } else {
            acc
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Dd) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        let q = self / b;
        let t = if q.hi < 0.0 {
            -((-q).floor())
        } else {
            q.floor()
        };
        self - b * t
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl DivAssign for Dd {
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl Zero for Dd {
    fn zero() -> Dd {
        Dd::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Dd {
        Dd::ONE
    }
}

impl Num for Dd {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, _radix: u32) -> Result<Dd, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Dd::from_f64)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    /// Scientific notation with 32 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_finite() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 {
            return write!(f, "0.0");
        }
        let neg = self.hi < 0.0;
        let mut x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        x *= Dd::from_f64(10.0).powi(-e);
        if x.hi >= 10.0 {
            x /= Dd::from_f64(10.0);
            e += 1;
        } else if x.hi < 1.0 {
            x *= Dd::from_f64(10.0);
            e -= 1;
        }
        let mut digits = Vec::with_capacity(33);
        for _ in 0..33 {
            let d = x.floor().hi.clamp(0.0, 9.0);
            digits.push(d as u8);
            x = (x - Dd::from_f64(d)) * Dd::from_f64(10.0);
        }
        // round on the 33rd digit
        if digits[32] >= 5 {
            let mut i = 31;
            loop {
                if digits[i] < 9 {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
                if i == 0 {
                    digits.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
            }
        }
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push((b'0' + digits[0]) as char);
        s.push('.');
        for d in &digits[1..32] {
            s.push((b'0' + d) as char);
        }
        write!(f, "{}e{}", s, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol * b.abs().to_f64().max(1e-300)
    }

    #[test]
    fn division_round_trips() {
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        let b = a * Dd::from_f64(3.0);
        assert!((b - Dd::ONE).abs().to_f64() < 1e-31);
    }

    #[test]
    fn exp_ln_inverse() {
        for &x in &[0.3, 1.0, 2.5, -7.25, 40.0] {
            let d = Dd::from_f64(x);
            assert!(close(d.exp().ln(), d, 1e-30), "x={x}");
        }
    }

    #[test]
    fn e_constant() {
        // e to 32 digits: 2.7182818284590452353602874713527
        let e = Dd::ONE.exp();
        let want = Dd::new(std::f64::consts::E, 1.445646891729250158e-16);
        assert!(close(e, want, 1e-31));
    }

    #[test]
    fn trig_identities() {
        for &x in &[0.1, std::f64::consts::FRAC_PI_4, 2.0, -3.0, 10.0, 100.5] {
            let (s, c) = Dd::from_f64(x).sin_cos();
            let one = s.sqr() + c.sqr();
            assert!((one - Dd::ONE).abs().to_f64() < 1e-30);
            assert!((s.to_f64() - x.sin()).abs() < 1e-15);
        }
        let (s, _) = (Dd::PI / Dd::from_f64(6.0)).sin_cos();
        assert!((s - Dd::from_f64(0.5)).abs().to_f64() < 1e-31);
    }

    #[test]
    fn atan2_inverts_sin_cos() {
        for &x in &[0.3, 1.2, 2.9, -0.4, -2.2] {
            let d = Dd::from_f64(x);
            let (s, c) = d.sin_cos();
            assert!(close(s.atan2(c), d, 1e-30), "x={x}");
        }
    }

    #[test]
    fn sqrt_two() {
        let r = Dd::from_f64(2.0).sqrt();
        assert!((r.sqr() - Dd::from_f64(2.0)).abs().to_f64() < 1e-31);
    }

    #[test]
    fn display_digits() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        assert_eq!(format!("{third}"), "3.3333333333333333333333333333333e-1");
        assert_eq!(
            format!("{}", Dd::from_f64(-1250.0)),
            "-1.2500000000000000000000000000000e3"
        );
    }
}
