//! Complex-analytic primitives: maps, domains, contour quadrature, Newton
//! inversion and the Schwarzian derivative.

mod contour;
mod domain;
mod map;
mod mobius;
mod newton;
mod schwarzian;

pub use contour::{
    cauchy_derivatives, coefficients_from_samples, contour_integral, laurent_coeffs, try_contour_integral,
    CircleContour, Orientation, DEFAULT_NODES,
};
pub use domain::DomainDescriptor;
pub use map::{ConformalMap, CustomMap, MapKind};
pub(crate) use map::{eval_laurent, eval_laurent_deriv};
pub use mobius::Mobius;
pub use newton::{newton_invert, newton_invert_path, MAX_NEWTON_ITERATIONS, NEWTON_TOL};
pub use schwarzian::{schwarzian, schwarzian_from_derivs};
