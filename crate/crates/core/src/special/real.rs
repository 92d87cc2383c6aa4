use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use once_cell::sync::Lazy;

use super::bernoulli::{exact_bernoulli_table, BERNOULLI_MAX};
use super::dd::{Dd, DD_EPS};

/// Scalar field the special functions are generic over.
pub trait Real:
    Copy
    + Debug
    + Display
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Significand bits.
    const BITS: u32;

    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn epsilon() -> Self;
    fn pi() -> Self;
    fn ln_2pi() -> Self;
    /// zeta'(-1).
    fn zeta_prime_m1() -> Self;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan2(self, x: Self) -> Self;
    fn floor(self) -> Self;
    fn hypot(self, other: Self) -> Self;
    fn is_finite(self) -> bool;
    fn from_ratio(r: &BigRational) -> Self;
    /// B_0 ..= B_BERNOULLI_MAX rounded to this precision.
    fn bernoulli() -> &'static [Self];

    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
    fn max_of(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
    fn cplx(re: f64, im: f64) -> Complex<Self> {
        Complex::new(Self::of(re), Self::of(im))
    }
}

static BERN_F64: Lazy<Vec<f64>> = Lazy::new(|| {
    exact_bernoulli_table()
        .iter()
        .map(|b| b.to_f64().unwrap_or(f64::NAN))
        .collect()
});

static BERN_DD: Lazy<Vec<Dd>> =
    Lazy::new(|| exact_bernoulli_table().iter().map(Dd::from_ratio).collect());

static LN_2PI_DD: Lazy<Dd> = Lazy::new(|| Dd::TWO_PI.ln());

impl Dd {
    pub fn from_ratio(r: &BigRational) -> Dd {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let rest = r - BigRational::from_float(hi).expect("finite");
        let lo = rest.to_f64().unwrap_or(0.0);
        Dd::from_pair(hi, lo)
    }
}

impl Real for f64 {
    const BITS: u32 = 53;

    fn of(x: f64) -> f64 {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn epsilon() -> f64 {
        f64::EPSILON
    }
    fn pi() -> f64 {
        std::f64::consts::PI
    }
    fn ln_2pi() -> f64 {
        1.8378770664093454835606594728112
    }
    fn zeta_prime_m1() -> f64 {
        -0.16542114370045092921
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    fn sin_cos(self) -> (f64, f64) {
        f64::sin_cos(self)
    }
    fn atan2(self, x: f64) -> f64 {
        f64::atan2(self, x)
    }
    fn floor(self) -> f64 {
        f64::floor(self)
    }
    fn hypot(self, other: f64) -> f64 {
        f64::hypot(self, other)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn from_ratio(r: &BigRational) -> f64 {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn bernoulli() -> &'static [f64] {
        &BERN_F64
    }
    fn powi(self, n: i32) -> f64 {
        f64::powi(self, n)
    }
}

impl Real for Dd {
    const BITS: u32 = 106;

    fn of(x: f64) -> Dd {
        Dd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn epsilon() -> Dd {
        Dd::from_f64(DD_EPS)
    }
    fn pi() -> Dd {
        Dd::PI
    }
    fn ln_2pi() -> Dd {
        *LN_2PI_DD
    }
    fn zeta_prime_m1() -> Dd {
        Dd::new(-0.16542114370045094, 1.0747835010305763e-17)
    }
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    fn exp(self) -> Dd {
        Dd::exp(self)
    }
    fn ln(self) -> Dd {
        Dd::ln(self)
    }
    fn sin_cos(self) -> (Dd, Dd) {
        Dd::sin_cos(self)
    }
    fn atan2(self, x: Dd) -> Dd {
        Dd::atan2(self, x)
    }
    fn floor(self) -> Dd {
        Dd::floor(self)
    }
    fn hypot(self, other: Dd) -> Dd {
        Dd::hypot(self, other)
    }
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
    fn from_ratio(r: &BigRational) -> Dd {
        Dd::from_ratio(r)
    }
    fn bernoulli() -> &'static [Dd] {
        &BERN_DD
    }
    fn powi(self, n: i32) -> Dd {
        Dd::powi(self, n)
    }
}

pub(crate) fn bernoulli_real<T: Real>(n: usize) -> T {
    debug_assert!(n <= BERNOULLI_MAX);
    T::bernoulli()[n]
}
