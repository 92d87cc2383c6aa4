//! Special functions over a generic real scalar (f64 or double-double).

pub mod barnes;
pub mod bernoulli;
pub mod cx;
pub mod dd;
pub mod gamma;
pub mod hurwitz;
pub mod polylog;
pub mod precision;
pub mod real;

pub use barnes::{barnes_g, log_barnes_g, log_barnes_g_with, log_g1};
pub use bernoulli::{bernoulli_number, bernoulli_polynomial, BERNOULLI_MAX};
pub use dd::Dd;
pub use gamma::{
    digamma, gamma_ratio, log_gamma, log_gamma_with, polygamma, polygamma_with, reciprocal_gamma,
};
pub use hurwitz::{
    hurwitz_zeta, hurwitz_zeta_ds, hurwitz_zeta_ds_with, hurwitz_zeta_with, log_milnor_gamma,
    milnor_gamma, zeta_prime,
};
pub use polylog::polylog;
pub use precision::{PrecisionPolicy, WorkingPrecision};
pub use real::Real;
