//! Exactly solvable correlation functions and the Ward-identity oracles they
//! satisfy: vertex correlators, half-plane one-point functions, stress-tensor
//! transport and the Joukowsky limit.

mod correlators;
mod stress;
mod ward;

pub use correlators::{
    gff_sphere_correlator, gff_sphere_partials, halfplane_onepoint, CentralCharge, GffSphere, HalfPlaneOnePoint,
    PrimaryFieldData,
};
pub use stress::{drc_joukowsky_t, onepoint_t, onepoint_t_dual, transform_t, DrcResult, DRC_EPS, DRC_NODES};
pub use ward::{
    boundary_continuum_form, connected_subtract, halfplane_partials, reflection_decomposition_check, reflection_decomposition_check_with,
    theorem4_check, theorem4_check_with,
    ward_rhs_halfplane, ward_rhs_halfplane_split, ward_rhs_sphere, Comparison, CONTINUUM_NODES, CONTINUUM_RADIUS,
};
