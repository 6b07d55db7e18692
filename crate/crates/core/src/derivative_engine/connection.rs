use std::sync::Arc;

use num_complex::Complex64;

use super::configuration::{apply_action, Configuration, Part};
use super::directional::DerivativeOptions;
use super::functional::{Composed, Functional, Pullback, SharedFunctional};
use super::holomorphic::{holo_derivative_point_with, HoloDerivative};
use crate::analytic_core::{ConformalMap, Mobius};
use crate::error::Result;

/// A complex value with an attached error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

fn transported(
    f: &dyn Functional,
    sigma: &Configuration,
    g: &ConformalMap,
    w: Complex64,
) -> Result<(HoloDerivative, Complex64, Configuration)> {
    let opts = DerivativeOptions::default();
    let here = holo_derivative_point_with(f, sigma, w, &opts)?;
    let dg = g.deriv(w)?;
    Ok((here, dg * dg, apply_action(g, sigma)?))
}

/// `Θ = Δ_w f(Σ) - (∂g(w))² Δ_{g(w)} (f∘g⁻¹)(g·Σ)`.
pub fn connection_theta(f: SharedFunctional, sigma: &Configuration, g: &ConformalMap, w: Complex64) -> Result<Estimate> {
    let (here, d2, moved) = transported(f.as_ref(), sigma, g, w)?;
    let gw = g.eval(w)?;
    let pulled = Pullback::new(f, g);
    let there = holo_derivative_point_with(&pulled, &moved, gw, &DerivativeOptions::default())?;
    Ok(Estimate { value: here.value - d2 * there.value, error: here.error + d2.norm() * there.error })
}

/// `Γ = Δ_w f(Σ) - (∂g(w))² Δ_{g(w)} f(g·Σ)`, the same functional on both sides.
pub fn gamma(f: &dyn Functional, sigma: &Configuration, g: &ConformalMap, w: Complex64) -> Result<Estimate> {
    let (here, d2, moved) = transported(f, sigma, g, w)?;
    let gw = g.eval(w)?;
    let there = holo_derivative_point_with(f, &moved, gw, &DerivativeOptions::default())?;
    Ok(Estimate { value: here.value - d2 * there.value, error: here.error + d2.norm() * there.error })
}

/// `|Θ|` for a Möbius map.
pub fn check_mobius_covariance(f: SharedFunctional, sigma: &Configuration, g: &Mobius, w: Complex64) -> Result<f64> {
    Ok(connection_theta(f, sigma, &ConformalMap::mobius(*g), w)?.value.norm())
}

/// Residual of the composition rule
/// `Θ(g₂∘g₁; f)(w) = Θ(g₁; f)(w) + (∂g₁(w))² Θ(g₂; f∘g₁⁻¹)(g₁(w))` at `g₁·Σ`.
pub fn composition_check(
    f: SharedFunctional,
    sigma: &Configuration,
    g1: &ConformalMap,
    g2: &ConformalMap,
    w: Complex64,
) -> Result<Estimate> {
    let direct = connection_theta(f.clone(), sigma, &g2.compose(g1), w)?;
    let first = connection_theta(f.clone(), sigma, g1, w)?;
    let (g1w, dg1) = g1.eval_with_deriv(w)?;
    let pulled: SharedFunctional = Arc::new(Pullback::new(f, g1));
    let second = connection_theta(pulled, &apply_action(g1, sigma)?, g2, g1w)?;
    let d2 = dg1 * dg1;
    let rhs = first.value + d2 * second.value;
    Ok(Estimate {
        value: direct.value - rhs,
        error: direct.error + first.error + d2.norm() * second.error,
    })
}

/// `|Δ_w(F∘f) - F'(f(Σ)) Δ_w f|` for a real function `F` of `Re f`.
pub fn chain_rule_check<F, D>(f: SharedFunctional, outer: F, outer_deriv: D, sigma: &Configuration, w: Complex64) -> Result<Estimate>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
    D: Fn(f64) -> f64,
{
    let opts = DerivativeOptions::default();
    let base = f.eval(sigma)?.re;
    let real_part: SharedFunctional = Arc::new(Composed::new(f.clone(), |x| x));
    let inner = holo_derivative_point_with(real_part.as_ref(), sigma, w, &opts)?;
    let composed = Composed::new(f, outer);
    let outer_d = holo_derivative_point_with(&composed, sigma, w, &DerivativeOptions { eta: Some(inner.eta), ..opts })?;
    let slope = outer_deriv(base);
    Ok(Estimate {
        value: outer_d.value - slope * inner.value,
        error: outer_d.error + slope.abs() * inner.error,
    })
}

/// `Δ_w f` minus the sum of the derivatives moving one marked point, and the
/// boundary when there is one, at a time. Returns the residual and the parts.
pub fn additivity_check(f: &dyn Functional, sigma: &Configuration, w: Complex64) -> Result<(Estimate, Vec<HoloDerivative>)> {
    let opts = DerivativeOptions::default();
    let total = holo_derivative_point_with(f, sigma, w, &opts)?;
    let fixed = DerivativeOptions { eta: Some(total.eta), ..opts };
    let mut parts = Vec::new();
    for j in 0..sigma.len() {
        parts.push(holo_derivative_point_with(f, sigma, w, &fixed.with_part(Part::Point(j)))?);
    }
    if sigma.has_boundary() {
        parts.push(holo_derivative_point_with(f, sigma, w, &fixed.with_part(Part::Boundary))?);
    }
    let sum: Complex64 = parts.iter().map(|p| p.value).sum();
    let err = total.error + parts.iter().map(|p| p.error).sum::<f64>();
    Ok((Estimate { value: total.value - sum, error: err }, parts))
}
