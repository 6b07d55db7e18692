//! Factorization `g = g_{A'} ∘ g_B` of a near-identity map on an annulus
//! `ρ_A < |z| < ρ_B`, with `g_B` conformal on `|z| < ρ_B` and `g_{A'}`
//! conformal near ∞ and normalised as `w + O(1/w)`.

mod setup;
mod solve;

pub use setup::{smallness_diagnostics, AnnularSetup, SmallnessReport};
pub use solve::{
    factorize, factorize_with, first_order_split, refactorization_residual, FactorizationResult, SplitField,
    DEFAULT_TOL, MAX_ITERATIONS,
};
