use num_complex::Complex64;

use crate::analytic_core::DomainDescriptor;
use crate::derivative_engine::{Configuration, FieldData, Functional};
use crate::error::{Error, Result};
use crate::riemann_map::halfplane_uniformizer;

/// Conformal dimensions of a primary field, optionally from a vertex charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimaryFieldData {
    pub delta: f64,
    pub delta_bar: f64,
    pub charge: Option<f64>,
}

impl PrimaryFieldData {
    pub fn new(delta: f64, delta_bar: f64) -> Result<Self> {
        if !(delta.is_finite() && delta_bar.is_finite()) {
            return Err(Error::InvalidConfiguration("conformal dimensions must be finite".into()));
        }
        Ok(PrimaryFieldData { delta, delta_bar, charge: None })
    }

    /// Vertex field with `δ = δ̃ = α²/2`.
    pub fn vertex(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidConfiguration("charge must be finite".into()));
        }
        let d = 0.5 * alpha * alpha;
        Ok(PrimaryFieldData { delta: d, delta_bar: d, charge: Some(alpha) })
    }

    pub fn field_data(&self) -> FieldData {
        match self.charge {
            Some(alpha) => FieldData::Gff { alpha },
            None => FieldData::Primary { delta: self.delta, delta_bar: self.delta_bar },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralCharge(pub f64);

impl CentralCharge {
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidConfiguration("central charge must be finite".into()));
        }
        Ok(CentralCharge(c))
    }
}

fn charges(sigma: &Configuration) -> Result<Vec<f64>> {
    sigma
        .data()
        .iter()
        .map(|d| d.charge().ok_or_else(|| Error::InvalidConfiguration("vertex correlator needs charges on every point".into())))
        .collect()
}

/// `(z_i - z_j)^p (z̄_i - z̄_j)^p` on principal branches. When the difference
/// sits on the negative real axis the two branches disagree with the
/// continuous value `|z_i - z_j|^{2p}` unless `p` is an integer.
fn pair_factor(d: Complex64, p: f64) -> Result<Complex64> {
    if d.norm() == 0.0 {
        return Err(Error::SingularConfiguration("coincident marked points".into()));
    }
    if d.im == 0.0 && d.re < 0.0 && p.fract() != 0.0 {
        return Err(Error::Unsupported(format!("branch cut: z_i - z_j = {d} with non-integer exponent {p}")));
    }
    Ok((p * (d.ln() + d.conj().ln())).exp())
}

/// `∏_{i<j} (z_i - z_j)^{α_iα_j} (z̄_i - z̄_j)^{α_iα_j}` times the accumulated
/// primary Jacobian factors.
pub fn gff_sphere_correlator(sigma: &Configuration) -> Result<Complex64> {
    if !matches!(sigma.domain(), DomainDescriptor::Sphere) {
        return Err(Error::InvalidConfiguration("vertex correlator is defined on the sphere".into()));
    }
    let alpha = charges(sigma)?;
    let total: f64 = alpha.iter().sum();
    if total.abs() > 1e-12 {
        return Err(Error::InvalidConfiguration(format!("charges sum to {total}, not 0")));
    }
    let z = sigma.points();
    let mut value = sigma.jacobian_factor();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            value *= pair_factor(z[i] - z[j], alpha[i] * alpha[j])?;
        }
    }
    Ok(value)
}

/// `∂_{z_j}` of the vertex correlator, in closed form.
pub fn gff_sphere_partials(sigma: &Configuration) -> Result<Vec<Complex64>> {
    let f = gff_sphere_correlator(sigma)?;
    let alpha = charges(sigma)?;
    let z = sigma.points();
    Ok((0..z.len())
        .map(|j| {
            let s: Complex64 = (0..z.len()).filter(|&k| k != j).map(|k| alpha[j] * alpha[k] / (z[j] - z[k])).sum();
            f * s
        })
        .collect())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GffSphere;

impl Functional for GffSphere {
    fn eval(&self, sigma: &Configuration) -> Result<Complex64> {
        gff_sphere_correlator(sigma)
    }

    fn label(&self) -> String {
        "vertex correlator on the sphere".into()
    }
}

/// `(2 Im z)^{-2δ}`.
pub fn halfplane_onepoint(z: Complex64, delta: f64) -> Result<f64> {
    if !(z.im > 0.0) {
        return Err(Error::InvalidConfiguration(format!("{z} is not in the upper half-plane")));
    }
    Ok((2.0 * z.im).powf(-2.0 * delta))
}

/// One-point function of a primary on a (possibly deformed) half-plane,
/// normalised to `(2 Im z)^{-δ-δ̃}` on ℍ itself. On a deformed domain the
/// uniformizer `m` onto ℍ is built around the marked point with `m(z) = z`,
/// so only `|m'(z)|` is needed.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfPlaneOnePoint;

impl HalfPlaneOnePoint {
    /// `f(ζ, ξ) = ((ζ - ξ)/i)^{-δ-δ̃}`, the correlator with `z` and `z̄`
    /// treated as independent variables.
    pub fn split(delta: f64, delta_bar: f64, zeta: Complex64, xi: Complex64) -> Complex64 {
        ((zeta - xi) / Complex64::i()).powf(-(delta + delta_bar))
    }
}

impl Functional for HalfPlaneOnePoint {
    fn eval(&self, sigma: &Configuration) -> Result<Complex64> {
        if !matches!(sigma.domain(), DomainDescriptor::HalfPlane) {
            return Err(Error::InvalidConfiguration("half-plane functional on another domain".into()));
        }
        match sigma.len() {
            0 => Ok(Complex64::new(1.0, 0.0)),
            1 => {
                let z = sigma.points()[0];
                let (delta, delta_bar) = sigma.data()[0].dims();
                if !(z.im > 0.0) {
                    return Err(Error::InvalidConfiguration(format!("{z} is not in the upper half-plane")));
                }
                let radius = match sigma.boundary_map() {
                    None => 1.0,
                    Some(phi) => halfplane_uniformizer(phi, z)?.riemann.disk.conformal_radius(),
                };
                Ok(sigma.jacobian_factor() * (2.0 * z.im * radius).powf(-(delta + delta_bar)))
            }
            n => Err(Error::Unsupported(format!("half-plane correlator with {n} points"))),
        }
    }

    fn label(&self) -> String {
        "one-point function on the half-plane".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_core::{ConformalMap, Mobius};
    use crate::derivative_engine::apply_action;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_point_hand_value() {
        let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
        assert!((gff_sphere_correlator(&s).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn affine_invariance_with_jacobians() {
        let s = Configuration::sphere_gff(vec![c(0.1, 0.2), c(-0.4, 0.3), c(0.7, -0.5)], &[0.6, 0.3, -0.9]).unwrap();
        let g = ConformalMap::mobius(Mobius::affine(c(2.0, 0.0), c(1.0, 0.0)).unwrap());
        let a = gff_sphere_correlator(&s).unwrap();
        let b = gff_sphere_correlator(&apply_action(&g, &s).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn branch_cut_is_rejected() {
        let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[0.5, -0.5]).unwrap();
        assert!(matches!(gff_sphere_correlator(&s), Err(Error::Unsupported(_))));
        let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
        assert!(gff_sphere_correlator(&s).is_ok());
    }

    #[test]
    fn halfplane_values() {
        assert_eq!(halfplane_onepoint(c(0.0, 1.0), 0.5).unwrap(), 0.5);
        let s = Configuration::halfplane(vec![c(0.3, 2.0)], &[0.5]).unwrap();
        assert!((HalfPlaneOnePoint.eval(&s).unwrap() - 0.25).norm() < 1e-15);
    }

    #[test]
    fn deformed_domain_matches_affine_transport() {
        // Φ(z) = 1.1z + 0.05 maps ℍ onto itself; the one-point function at Φ(z)
        // with the Jacobian from Φ must agree with the undeformed one.
        let s = Configuration::halfplane(vec![c(0.1, 0.7)], &[0.5]).unwrap();
        let phi = ConformalMap::custom_with_derivative("affine", |z| 1.1 * z + 0.05, |_| c(1.1, 0.0), 1.0, DomainDescriptor::HalfPlane);
        let moved = apply_action(&phi, &s).unwrap();
        assert!(moved.boundary_map().is_some());
        let a = HalfPlaneOnePoint.eval(&s).unwrap();
        let b = HalfPlaneOnePoint.eval(&moved).unwrap();
        assert!((a - b).norm() < 1e-12, "{a} {b}");
    }
}
