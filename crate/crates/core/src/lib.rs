//! Superzeta regularization of zero sequences, Selberg and scattering data on
//! hyperbolic surfaces with cusps, and Lax-Phillips determinants.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod lax_phillips;
pub mod special;
pub mod superzeta;
pub mod surface;

pub use error::{Error, Result};
pub use num_complex::Complex64;
