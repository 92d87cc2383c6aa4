//! Superzeta functions of order-two zero sequences: direct sums, the
//! continued representation from asymptotic data, and regularized products.

pub mod asymptotic;
pub mod families;
pub mod quadrature;
pub mod voros;
pub mod zeros;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use asymptotic::{AlgebraicTerm, AsymptoticData, NullRemainder, Remainder};
pub use families::{barnes_asymptotics, barnes_family, g1_asymptotics, g1_family};
pub use quadrature::{QuadResult, QuadratureSpec, Scheme};
pub use voros::{residue_at, residue_of, voros_continue, voros_log_det, ResidueEstimate};
pub use zeros::{
    log_delta_third_derivative, superzeta_direct, LatticeTail, ZeroEntry, ZeroSequence,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectSum,
    Continued,
    /// Closed-form part plus a Mellin integral of a logarithmic derivative.
    MellinIntegral,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperzetaValue {
    pub value: Complex64,
    pub abs_error: f64,
    pub method: Method,
}

/// log D_f(z) = log Delta_f(z) - (b2 z^2 + b1 z + b0), with log Delta_f supplied.
pub fn log_regularized_product<F>(
    z: Complex64,
    asym: &AsymptoticData,
    log_delta: F,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    asym.check_sector(z)?;
    Ok(log_delta(z)? - asym.polynomial_part(z))
}

/// D_f(z) = exp(-(b2 z^2 + b1 z + b0)) Delta_f(z).
pub fn regularized_product<F>(
    z: Complex64,
    asym: &AsymptoticData,
    log_delta: F,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    Ok(log_regularized_product(z, asym, log_delta)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{log_g1, Real};
    use std::f64::consts::PI;

    #[test]
    fn g1_product_paths_agree() {
        let vol = 2.0 * PI;
        let (_, asym) = g1_family(vol).unwrap();
        let q = QuadratureSpec::default();
        for x in [1.5, 2.0, 3.0, 5.0, 10.0] {
            let z = Complex64::new(x, 0.0);
            let hadamard = log_regularized_product(z, &asym, |t| log_g1(t, vol)).unwrap();
            let derivative = voros_log_det(z, &asym, &q).unwrap().value;
            let rel = ((hadamard.exp() - derivative.exp()) / hadamard.exp()).norm();
            assert!(rel < 1e-8, "z={x}: {hadamard} vs {derivative}");
            // closed form of the normalizing exponent
            let ln2pi = <f64 as Real>::ln_2pi();
            let w = vol / (2.0 * PI);
            let expo = w * (2.0 * x * ln2pi + 2.0 * <f64 as Real>::zeta_prime_m1() - 0.5 * ln2pi);
            let want = log_g1(z, vol).unwrap().re - expo;
            assert!((hadamard.re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_b_coefficients_give_delta() {
        let asym = AsymptoticData::zero();
        let z = Complex64::new(2.0, 1.0);
        let d = regularized_product(z, &asym, |t| Ok(t.ln())).unwrap();
        assert!((d - z).norm() < 1e-15);
    }

    #[test]
    fn holomorphic_at_zero() {
        let (_, asym) = g1_family(2.0 * PI).unwrap();
        let q = QuadratureSpec::default();
        let z = Complex64::new(2.0, 0.0);
        let f = |s: f64| {
            voros_continue(Complex64::new(s, 0.0), z, &asym, &q)
                .unwrap()
                .value
        };
        let exact = -voros_log_det(z, &asym, &q).unwrap().value;
        let e1 = ((f(0.02) - f(-0.02)) / 0.04 - exact).norm();
        let e2 = ((f(0.01) - f(-0.01)) / 0.02 - exact).norm();
        // O(h^2): halving h quarters the error
        assert!(e2 < e1 && (e1 / e2 - 4.0).abs() < 0.5, "{e1} {e2}");
    }
}
