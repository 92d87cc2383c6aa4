//! Complete zetas Z+-, their superzeta functions, the determinants of
//! zI - (I/2 +- B) and the divisor bookkeeping at the special points.

pub mod determinant;
pub mod divisor;
pub mod zeta_b;

pub use determinant::{
    det_closed, det_from_superzeta, det_minus, det_plus, det_star_constant,
    det_star_constant_upsilon_route, det_star_from_zprime, higher_depth_det, log_upsilon,
    log_upsilon_minus, log_upsilon_plus, phi_quotient, CompleteZeta, DetMethod, DeterminantResult,
    HigherDepthResult, ZETA_PRIME_M1,
};
pub use divisor::{multiplicity_at_half, singular_multiplicity, DivisorLedger};
pub use zeta_b::{
    log_derivative_moment, script_g1, script_g1_ds, zeta_b, zeta_b_ds_at, zeta_b_minus,
    zeta_b_plus, Side,
};
