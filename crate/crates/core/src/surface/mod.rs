//! Gamma(2) geodesic data, Selberg zeta functions and scattering data.

pub mod config;
pub mod enumerate;
pub mod moebius;
pub mod scattering;
pub mod selberg;
pub mod table;
pub mod words;

pub use config::{DirichletTerm, EigenEntry, PoleEntry, SurfaceConfig};
pub use enumerate::{enumerate_primitive_classes, Enumeration, EnumerationLimits, PrimitiveClass};
pub use moebius::{log_norm_from_trace, max_trace_for_norm, norm_from_trace, Moebius};
pub use scattering::{log_scattering_phi, scattering_phi, scattering_phi_with_tail};
pub use selberg::{
    default_l_max, euler_product, lambda_dirichlet, poly_selberg_log, selberg_log_derivative,
    selberg_log_z, ExpSum, SelbergValue,
};
pub use table::{GeodesicTable, TableEntry};
pub use words::CyclicWord;
