use num_traits::Zero;

use super::cx::{self, C};
use super::real::Real;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 10_000_000;

/// Li_s(w) = sum_{n>=1} w^n / n^s for |w| < 1.
pub fn polylog<T: Real>(s: C<T>, w: C<T>) -> Result<C<T>> {
    let r = cx::abs(w).to_f64();
    if !(r < 1.0) {
        return Err(Error::domain(format!("polylog needs |w| < 1, got {r}")));
    }
    if r == 0.0 {
        return Ok(C::zero());
    }
    let eps = T::epsilon().to_f64();
    let mut sum = C::<T>::zero();
    let mut wn = w;
    for n in 1..=MAX_TERMS {
        let ln_n = T::of(n as f64).ln();
        let term = wn * cx::exp(-s * ln_n);
        sum = sum + term;
        let t = cx::abs(term).to_f64();
        // the remaining tail is bounded by t r/(1-r) once n^{-Re s} stops growing
        if n > 2 && t * r / (1.0 - r) <= eps * cx::abs(sum).to_f64() {
            return Ok(sum);
        }
        wn = wn * w;
    }
    Err(Error::Budget(format!(
        "polylog did not converge in {MAX_TERMS} terms at |w| = {r}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn reference_values() {
        let v = polylog(Complex::new(3.0, 0.0), Complex::new(0.5, 0.3)).unwrap();
        assert!(
            (v - Complex::new(0.517898437127761962143, 0.346466341455521662577)).norm() < 1e-15
        );
        let v = polylog(Complex::new(2.0, 0.0), Complex::new(0.9, 0.0)).unwrap();
        assert!((v.re - 1.2997147230049587819795713031).abs() < 1e-14);
        // Li_1(w) = -log(1-w)
        let w = Complex::new(-0.4, 0.2);
        let v = polylog(Complex::new(1.0, 0.0), w).unwrap();
        assert!((v + (Complex::new(1.0, 0.0) - w).ln()).norm() < 1e-15);
    }

    #[test]
    fn outside_disk_is_domain_error() {
        assert!(matches!(
            polylog(Complex::new(2.0, 0.0), Complex::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }
}
