//! Numerical conformal geometry: contour quadrature, vector-field flows,
//! Riemann maps, directional derivatives of correlation functionals,
//! Ward identities and annular factorization.

pub mod analytic_core;
pub mod annular_factorization;
pub mod cft_ward;
pub mod derivative_engine;
pub mod error;
pub mod riemann_map;
pub mod vector_fields;

pub use error::{Error, Result};
pub use num_complex::Complex64;
