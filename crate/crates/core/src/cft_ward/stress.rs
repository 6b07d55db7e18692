use std::f64::consts::PI;

use num_complex::Complex64;

use super::correlators::CentralCharge;
use crate::analytic_core::{newton_invert, schwarzian, ConformalMap};
use crate::derivative_engine::{apply_action, Configuration, Functional};
use crate::error::{Error, Result};
use crate::vector_fields::{family_form, special_field_hw_in, Anchor};

/// Angular nodes of the Joukowsky average.
pub const DRC_NODES: usize = 32;

/// Default `ε/d` sequence, `d` being the distance from `w` to the points.
pub const DRC_EPS: [f64; 3] = [0.1, 0.05, 0.025];

/// `(∂g(w))² T(g(w)) + (c/12){g, w}`.
pub fn transform_t(g: &ConformalMap, w: Complex64, t_at_gw: Complex64, c: CentralCharge) -> Result<Complex64> {
    let d = g.deriv(w)?;
    Ok(d * d * t_at_gw + c.0 / 12.0 * schwarzian(g, w)?)
}

/// `⟨T(w)⟩_C = (c/12){g⁻¹, w}` for a uniformizer `g: ℍ → C`.
pub fn onepoint_t(g: &ConformalMap, w: Complex64, c: CentralCharge) -> Result<Complex64> {
    Ok(c.0 / 12.0 * schwarzian(&g.inverse(), w)?)
}

/// Same quantity through `{g⁻¹, w} = -(∂g⁻¹(w))² {g, g⁻¹(w)}`, i.e. by
/// transporting `⟨T⟩_ℍ = 0` with `transform_t`.
pub fn onepoint_t_dual(g: &ConformalMap, w: Complex64, c: CentralCharge) -> Result<Complex64> {
    let u = newton_invert(g, w, g.inverse_guess(w))?;
    let d = g.deriv(u)?;
    if d.norm() == 0.0 {
        return Err(Error::DegenerateDerivative { at: u });
    }
    Ok(-c.0 / 12.0 * schwarzian(g, u)? / (d * d))
}

/// Joukowsky-limit estimate of `⟨T(w) ∏O⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DrcResult {
    /// Extrapolated `(1/2πε²) ∫dθ e^{-2iθ} [f(g_ε·Σ) - f(Σ)]`.
    pub value: Complex64,
    /// The same with the prefactor `8/(πε²)`, i.e. `16 · value`.
    pub raw: Complex64,
    /// Difference between the last two extrapolants.
    pub error: f64,
    /// Absolute `ε` values and the unextrapolated averages.
    pub samples: Vec<(f64, Complex64)>,
}

/// `(1/N) Σ_k e^{-2iθ_k} [f(g_{ε,θ_k}·Σ) - f(Σ)] / ε²` with
/// `g_{ε,θ}(z) = z + ε² e^{2iθ}/(w - z)`.
fn drc_average(f: &dyn Functional, sigma: &Configuration, w: Complex64, eps: f64, d: f64, base: Complex64) -> Result<Complex64> {
    let eta = eps * eps;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..DRC_NODES {
        let theta = 2.0 * PI * k as f64 / DRC_NODES as f64;
        let h = special_field_hw_in(w, 2.0 * theta, 0.5 * d)?;
        let at = |e: Error| Error::AtStep { eta, source: Box::new(e) };
        let g = family_form(&h, Anchor::Infinity, eta).map_err(at)?;
        let v = f.eval(&apply_action(&g, sigma).map_err(at)?).map_err(at)?;
        acc += Complex64::from_polar(1.0, -2.0 * theta) * (v - base);
    }
    Ok(acc / (DRC_NODES as f64 * eta))
}

/// Angular Joukowsky average at each `ε = eps_rel·d`, Richardson-extrapolated
/// in `ε⁴` (Neville table).
pub fn drc_joukowsky_t(f: &dyn Functional, sigma: &Configuration, w: Complex64, eps_rel: &[f64]) -> Result<DrcResult> {
    if eps_rel.is_empty() {
        return Err(Error::InvalidConfiguration("empty ε sequence".into()));
    }
    let d = sigma.points().iter().map(|z| (z - w).norm()).fold(f64::INFINITY, f64::min);
    if d == 0.0 {
        return Err(Error::SingularConfiguration(format!("w = {w} is a marked point")));
    }
    let d = if d.is_finite() { d } else { 1.0 };
    let base = f.eval(sigma)?;
    let mut samples = Vec::with_capacity(eps_rel.len());
    for &r in eps_rel {
        if !(r > 0.0) || r * r >= 0.5 {
            return Err(Error::StepTooLarge(format!("ε²/|w - z|² = {:.3e} must stay below 0.5", r * r)));
        }
        let eps = r * d;
        samples.push((eps, drc_average(f, sigma, w, eps, d, base)?));
    }
    let x: Vec<f64> = samples.iter().map(|(e, _)| e.powi(4)).collect();
    let mut table: Vec<Complex64> = samples.iter().map(|(_, v)| *v).collect();
    let mut prev = table[table.len() - 1];
    for level in 1..table.len() {
        prev = table[table.len() - 1];
        for i in (level..table.len()).rev() {
            let (xa, xb) = (x[i - level], x[i]);
            table[i] = (xa * table[i] - xb * table[i - 1]) / (xa - xb);
        }
    }
    let value = table[table.len() - 1];
    let error = if table.len() > 1 { (value - prev).norm() } else { f64::INFINITY };
    Ok(DrcResult { value, raw: 16.0 * value, error, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_core::{DomainDescriptor, Mobius};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mobius_transport_has_no_anomaly() {
        let g = ConformalMap::mobius(Mobius::new(c(1.0, 0.5), c(0.2, 0.0), c(0.3, 0.0), c(1.0, 0.0)).unwrap());
        let w = c(0.2, 0.1);
        let t = c(0.7, -0.2);
        let d = g.deriv(w).unwrap();
        let v = transform_t(&g, w, t, CentralCharge(1.5)).unwrap();
        assert!((v - d * d * t).norm() < 1e-12);
    }

    #[test]
    fn onepoint_paths_agree() {
        let g = ConformalMap::polynomial(0, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.05, 0.0)], DomainDescriptor::HalfPlane).unwrap();
        let w = c(0.1, 0.6);
        let a = onepoint_t(&g, w, CentralCharge(1.0)).unwrap();
        let b = onepoint_t_dual(&g, w, CentralCharge(1.0)).unwrap();
        assert!((a - b).norm() < 1e-8, "{a} {b}");
    }
}
