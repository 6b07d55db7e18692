use num_complex::Complex64;

use super::configuration::{apply_action_part, Configuration, Part};
use super::functional::Functional;
use crate::error::{Error, Result};
use crate::vector_fields::{family_form, Anchor, VectorField};

/// Default relative step.
pub const ETA_REL: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
pub struct DerivativeOptions {
    /// Step relative to `L/H`, see [`step_size`].
    pub eta_rel: f64,
    /// Which parts of the configuration the deformation moves.
    pub part: Part,
    /// Fixed step overriding the automatic choice.
    pub eta: Option<f64>,
    /// Anchor for point derivatives (defaults to the point itself).
    pub anchor: Option<Anchor>,
    /// Radius of the disk around `w` excluded from the domain of `h^{(w)}`.
    pub exclusion: Option<f64>,
}

impl Default for DerivativeOptions {
    fn default() -> Self {
        DerivativeOptions { eta_rel: ETA_REL, part: Part::All, eta: None, anchor: None, exclusion: None }
    }
}

impl DerivativeOptions {
    pub fn with_part(mut self, part: Part) -> Self {
        self.part = part;
        self
    }
}

/// A directional derivative with its Richardson error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: Complex64,
    pub error: f64,
    pub eta: f64,
}

/// `η₀ = eta_rel · L / H` where `L` is the configuration length scale
/// (pairwise distances, distance to the pole of `h` and from the pole to the
/// boundary, capped at 1) and `H` the largest displacement speed `|h|` over
/// the moved points and, when the boundary moves, the boundary samples.
pub fn step_size(sigma: &Configuration, h: &VectorField, opts: &DerivativeOptions) -> f64 {
    let mut len = sigma.scale();
    let mut speed: f64 = 0.0;
    let pole = h.pole();
    for (j, z) in sigma.points().iter().enumerate() {
        if let Some(p) = pole {
            len = len.min((z - p).norm());
        }
        let moved = match opts.part {
            Part::All => true,
            Part::Point(k) => k == j,
            Part::Boundary => false,
        };
        if moved {
            if let Ok(v) = h.eval(*z) {
                speed = speed.max(v.norm());
            }
        }
    }
    if sigma.has_boundary() && matches!(opts.part, Part::All | Part::Boundary) {
        if let Some(p) = pole {
            if let Some(d) = sigma.boundary_distance(p) {
                len = len.min(d);
            }
        }
        for b in sigma.boundary_samples() {
            if let Ok(v) = h.eval(b) {
                if v.re.is_finite() {
                    speed = speed.max(v.norm());
                }
            }
        }
    }
    opts.eta_rel * len / speed.max(1e-3)
}

/// Central difference quotient `(f(g_η·Σ) - f(g_{-η}·Σ)) / 2η`.
fn central(f: &dyn Functional, sigma: &Configuration, h: &VectorField, anchor: Anchor, eta: f64, part: Part) -> Result<(Complex64, f64)> {
    let mut vals = [Complex64::new(0.0, 0.0); 2];
    for (k, e) in [eta, -eta].into_iter().enumerate() {
        let at = |err: Error| Error::AtStep { eta: e, source: Box::new(err) };
        let g = family_form(h, anchor, e).map_err(at)?;
        let moved = apply_action_part(&g, sigma, part).map_err(at)?;
        vals[k] = f.eval(&moved).map_err(at)?;
    }
    Ok(((vals[0] - vals[1]) / (2.0 * eta), vals[0].norm().max(vals[1].norm())))
}

/// The step actually used: the requested one, halved until the family is
/// admissible on the field's domain.
pub fn admissible_step(h: &VectorField, anchor: Anchor, eta: f64) -> Result<f64> {
    let mut e = eta;
    for _ in 0..60 {
        match family_form(h, anchor, e) {
            Ok(_) => return Ok(e),
            Err(Error::StepTooLarge(_)) => e *= 0.5,
            Err(other) => return Err(other),
        }
    }
    Err(Error::StepTooLarge(format!("no admissible step below {eta:e}")))
}

/// `∇_h f(Σ)` from central differences at `η, η/2, η/4`; the value is the
/// Richardson combination of the first two, the error estimate compares it
/// with the combination of the last two.
pub fn directional_derivative_at_step(
    f: &dyn Functional,
    sigma: &Configuration,
    h: &VectorField,
    anchor: Anchor,
    eta: f64,
    part: Part,
) -> Result<Derivative> {
    let (d1, s1) = central(f, sigma, h, anchor, eta, part)?;
    let (d2, s2) = central(f, sigma, h, anchor, 0.5 * eta, part)?;
    let (d4, s4) = central(f, sigma, h, anchor, 0.25 * eta, part)?;
    let coarse = (4.0 * d2 - d1) / 3.0;
    let fine = (4.0 * d4 - d2) / 3.0;
    let scale = s1.max(s2).max(s4);
    let floor = 64.0 * f64::EPSILON * scale / eta;
    Ok(Derivative { value: coarse, error: 2.0 * (coarse - fine).norm() + floor, eta })
}

pub fn directional_derivative(
    f: &dyn Functional,
    sigma: &Configuration,
    h: &VectorField,
    anchor: Anchor,
    opts: &DerivativeOptions,
) -> Result<Derivative> {
    let eta = admissible_step(h, anchor, opts.eta.unwrap_or_else(|| step_size(sigma, h, opts)))?;
    directional_derivative_at_step(f, sigma, h, anchor, eta, opts.part)
}

/// Largest pairwise spread of `∇_h f(Σ)` over several anchors.
pub fn anchor_spread(f: &dyn Functional, sigma: &Configuration, h: &VectorField, anchors: &[Anchor]) -> Result<f64> {
    let opts = DerivativeOptions::default();
    let vals = anchors
        .iter()
        .map(|&a| directional_derivative(f, sigma, h, a, &opts).map(|d| d.value))
        .collect::<Result<Vec<_>>>()?;
    let mut worst: f64 = 0.0;
    for (i, a) in vals.iter().enumerate() {
        for b in &vals[..i] {
            worst = worst.max((a - b).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_core::DomainDescriptor;
    use crate::derivative_engine::functional;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one_point() -> Configuration {
        Configuration::new(
            DomainDescriptor::Sphere,
            vec![c(0.2, -0.1)],
            vec![crate::derivative_engine::FieldData::Primary { delta: 0.0, delta_bar: 0.0 }],
        )
        .unwrap()
    }

    #[test]
    fn constant_and_translation() {
        let s = one_point();
        let one = VectorField::constant(c(1.0, 0.0), DomainDescriptor::Sphere);
        let k = functional("const", |_| Ok(c(2.5, 0.0)));
        let d = directional_derivative(&k, &s, &one, Anchor::Infinity, &DerivativeOptions::default()).unwrap();
        assert_eq!(d.value, c(0.0, 0.0));
        let re = functional("re z1", |s| Ok(c(s.points()[0].re, 0.0)));
        let d = directional_derivative(&re, &s, &one, Anchor::Infinity, &DerivativeOptions::default()).unwrap();
        assert!((d.value - 1.0).norm() < 1e-12, "{d:?}");
    }

    #[test]
    fn failures_carry_the_step() {
        let s = one_point();
        let one = VectorField::constant(c(1.0, 0.0), DomainDescriptor::Sphere);
        let bad = functional("bad", |s| {
            if s.points()[0] == c(0.2, -0.1) {
                Ok(c(0.0, 0.0))
            } else {
                Err(Error::Unsupported("moved".into()))
            }
        });
        let err = directional_derivative(&bad, &s, &one, Anchor::Infinity, &DerivativeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::AtStep { .. }));
    }
}
