use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::cx::C;
use super::real::Real;
use crate::error::{Error, Result};

/// Largest index held in the Bernoulli cache.
pub const BERNOULLI_MAX: usize = 256;

static EXACT: Lazy<Vec<BigRational>> = Lazy::new(|| build_table(BERNOULLI_MAX));

/// Tangent numbers T_1..T_n (Brent-Harvey), integer arithmetic only.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

fn build_table(nmax: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::zero(); nmax + 1];
    b[0] = BigRational::one();
    if nmax >= 1 {
        b[1] = BigRational::new(BigInt::from(-1), BigInt::from(2));
    }
    let tn = tangent_numbers(nmax / 2);
    for k in 1..=nmax / 2 {
        // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - BigInt::one());
        let mut num = &tn[k] * BigInt::from(2 * k);
        if k % 2 == 0 {
            num = -num;
        }
        b[2 * k] = BigRational::new(num, den);
    }
    b
}

pub(crate) fn exact_bernoulli_table() -> &'static [BigRational] {
    &EXACT
}

/// Exact Bernoulli number B_n with the convention B_1 = -1/2.
pub fn bernoulli_number(n: usize) -> Result<BigRational> {
    EXACT.get(n).cloned().ok_or_else(|| {
        Error::Config(format!(
            "Bernoulli index {n} exceeds cache capacity {BERNOULLI_MAX}"
        ))
    })
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// B_n(z) = sum_j C(n,j) B_j z^(n-j), evaluated by Horner.
pub fn bernoulli_polynomial<T: Real>(n: usize, z: C<T>) -> Result<C<T>> {
    if n > BERNOULLI_MAX {
        return Err(Error::Config(format!(
            "Bernoulli index {n} exceeds cache capacity {BERNOULLI_MAX}"
        )));
    }
    let mut acc = C::<T>::zero();
    for j in 0..=n {
        let coeff = BigRational::from_integer(binomial(n, j)) * &EXACT[j];
        acc = acc * z + C::new(T::from_ratio(&coeff), T::zero());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::dd::Dd;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number(0).unwrap(), r(1, 1));
        assert_eq!(bernoulli_number(1).unwrap(), r(-1, 2));
        assert_eq!(bernoulli_number(2).unwrap(), r(1, 6));
        assert_eq!(bernoulli_number(3).unwrap(), r(0, 1));
        assert_eq!(bernoulli_number(4).unwrap(), r(-1, 30));
        assert_eq!(bernoulli_number(12).unwrap(), r(-691, 2730));
        assert_eq!(bernoulli_number(20).unwrap(), r(-174611, 330));
    }

    #[test]
    fn defining_recurrence_holds() {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1
        for n in 1..=80 {
            let mut s = BigRational::zero();
            for j in 0..=n {
                s += BigRational::from_integer(binomial(n + 1, j)) * bernoulli_number(j).unwrap();
            }
            assert!(s.is_zero(), "n={n}");
        }
    }

    #[test]
    fn over_capacity_is_an_error() {
        assert!(bernoulli_number(BERNOULLI_MAX + 1).is_err());
    }

    #[test]
    fn polynomial_values() {
        let z = C::new(0.25f64, 0.0);
        // B_2(z) = z^2 - z + 1/6
        let b2 = bernoulli_polynomial(2, z).unwrap();
        assert!((b2.re - (0.0625 - 0.25 + 1.0 / 6.0)).abs() < 1e-15);
        // B_n(1/2) = (2^{1-n} - 1) B_n
        let zd = C::new(Dd::from_f64(0.5), Dd::ZERO);
        let b10 = bernoulli_polynomial(10, zd).unwrap();
        let want =
            Dd::from_f64(2f64.powi(-9) - 1.0) * Dd::from_ratio(&bernoulli_number(10).unwrap());
        assert!((b10.re - want).abs().to_f64() < 1e-30);
    }
}
