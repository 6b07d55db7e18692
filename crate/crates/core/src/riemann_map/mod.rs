//! Riemann maps of near-circular Jordan domains by Theodorsen iteration and
//! uniformizers of deformed half-planes.

mod curve;
mod halfplane;
mod theodorsen;

pub use curve::{BoundaryCurve, DEFAULT_MODES, MAX_DEVIATION, MAX_MODES, TAIL_TOL};
pub use halfplane::{cayley_boundary, halfplane_uniformizer, HalfPlaneUniformizer};
pub use theodorsen::{solve_disk_map, solve_disk_map_at, DiskMap, RiemannMapResult, MAX_ITERATIONS, UPDATE_TOL};
