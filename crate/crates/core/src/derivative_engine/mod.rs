//! Conformal derivatives of functionals on configurations: directional and
//! partial derivatives, holomorphic derivatives in series and point form,
//! and the connections Θ and Γ.

mod configuration;
mod connection;
mod directional;
mod functional;
mod holomorphic;

pub use configuration::{apply_action, apply_action_part, Configuration, FieldData, Part};
pub use connection::{
    additivity_check, chain_rule_check, check_mobius_covariance, composition_check, connection_theta, gamma, Estimate,
};
pub use directional::{
    admissible_step, anchor_spread, directional_derivative, directional_derivative_at_step, step_size, Derivative,
    DerivativeOptions, ETA_REL,
};
pub use functional::{functional, Composed, FnFunctional, Functional, Pullback, SharedFunctional};
pub use holomorphic::{
    antiholo_derivative_point, antiholo_derivative_point_with, gradient_along, holo_derivative_point,
    holo_derivative_point_theta, holo_derivative_point_with, holo_derivative_series, holo_derivative_series_exterior,
    holo_derivative_series_scaled, partial_derivative_f_ns, HoloDerivative, SeriesDerivative, Sector,
};
