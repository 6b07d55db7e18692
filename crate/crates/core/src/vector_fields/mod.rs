//! Holomorphic vector fields, the basis `H_{n,s}` and its coefficient
//! functionals, push-forwards, deformation families and flows.

mod actions;
mod basis;
mod family;
mod field;
mod flow;

pub use actions::{act_left, act_right, pushforward};
pub use basis::{basis_h, coeff_c, coeff_c_on, reconstruct, special_field_hw, special_field_hw_in, COEFF_RADIUS};
pub use family::{family_form, Anchor, FamilyMember};
pub use field::{FieldKind, Sign, VectorField};
pub use flow::{exp_flow, exp_flow_with, quadratic_flow, FlowMap, FlowMethod, FlowResult, FlowStrategy, DOMAIN_MARGIN, RK4_STEPS};
