use std::f64::consts::PI;

use num_complex::Complex64;

use super::correlators::{gff_sphere_correlator, gff_sphere_partials, HalfPlaneOnePoint};
use crate::analytic_core::{cauchy_derivatives, DomainDescriptor};
use crate::derivative_engine::{
    antiholo_derivative_point_with, holo_derivative_point_with, Configuration, DerivativeOptions,
    Functional, Part,
};
use crate::error::{Error, Result};

/// Nodes on the contour used by [`boundary_continuum_form`].
pub const CONTINUUM_NODES: usize = 32;

/// Radius, in Cayley coordinates about `w`, of that contour.
pub const CONTINUUM_RADIUS: f64 = 0.6;

/// A numerical value set against its oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub value: Complex64,
    pub oracle: Complex64,
    /// Error estimate attached to `value`.
    pub error: f64,
}

impl Comparison {
    pub fn residual(&self) -> f64 {
        (self.value - self.oracle).norm()
    }

    /// `|value - oracle| / (1 + |oracle|)`.
    pub fn relative(&self) -> f64 {
        self.residual() / (1.0 + self.oracle.norm())
    }
}

fn check_w(sigma: &Configuration, w: Complex64) -> Result<()> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::InvalidConfiguration("w must be finite".into()));
    }
    if sigma.points().contains(&w) {
        return Err(Error::SingularConfiguration(format!("w = {w} is a marked point")));
    }
    Ok(())
}

/// `Σ_j (δ_j/(w - z_j)² + ∂_{z_j}/(w - z_j))` applied to the vertex correlator.
pub fn ward_rhs_sphere(w: Complex64, sigma: &Configuration) -> Result<Complex64> {
    check_w(sigma, w)?;
    if sigma.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let f = gff_sphere_correlator(sigma)?;
    let partials = gff_sphere_partials(sigma)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((z, d), p) in sigma.points().iter().zip(sigma.data()).zip(partials) {
        let u = w - z;
        acc += d.dims().0 * f / (u * u) + p / u;
    }
    Ok(acc)
}

/// `∂_z f` and `∂_z̄ f` of the half-plane one-point function by Cauchy
/// extraction on its split form.
pub fn halfplane_partials(z: Complex64, delta: f64, delta_bar: f64) -> Result<(Complex64, Complex64)> {
    let r = 0.5 * z.im;
    let dz = cauchy_derivatives(|u| HalfPlaneOnePoint::split(delta, delta_bar, u, z.conj()), z, r, 1)?[1];
    let dzb = cauchy_derivatives(|u| HalfPlaneOnePoint::split(delta, delta_bar, z, u), z.conj(), r, 1)?[1];
    Ok((dz, dzb))
}

/// Direct and image terms `Σ_j δ_j/(w-z_j)² + δ̃_j/(w-z̄_j)² + ∂_{z_j}/(w-z_j) + ∂_{z̄_j}/(w-z̄_j)`
/// applied to the half-plane one-point function; returned as (direct, image).
pub fn ward_rhs_halfplane_split(w: Complex64, sigma: &Configuration) -> Result<(Complex64, Complex64)> {
    check_w(sigma, w)?;
    if !matches!(sigma.domain(), DomainDescriptor::HalfPlane) || sigma.boundary_map().is_some() {
        return Err(Error::InvalidConfiguration("expected an undeformed half-plane configuration".into()));
    }
    let f = HalfPlaneOnePoint.eval(sigma)?;
    let mut direct = Complex64::new(0.0, 0.0);
    let mut image = Complex64::new(0.0, 0.0);
    for (z, d) in sigma.points().iter().zip(sigma.data()) {
        let (delta, delta_bar) = d.dims();
        let (dz, dzb) = halfplane_partials(*z, delta, delta_bar)?;
        let jac = sigma.jacobian_factor();
        let (u, v) = (w - z, w - z.conj());
        direct += delta * f / (u * u) + jac * dz / u;
        image += delta_bar * f / (v * v) + jac * dzb / v;
    }
    Ok((direct, image))
}

pub fn ward_rhs_halfplane(w: Complex64, sigma: &Configuration) -> Result<Complex64> {
    let (direct, image) = ward_rhs_halfplane_split(w, sigma)?;
    Ok(direct + image)
}

/// `⟨T ∏O⟩ - ⟨T⟩⟨∏O⟩`.
pub fn connected_subtract(full: Complex64, onept_t: Complex64, correlator: Complex64) -> Complex64 {
    full - onept_t * correlator
}

/// Numerical holomorphic derivative of the matching correlator against the
/// connected Ward oracle (`⟨T⟩ = 0` on the sphere and on ℍ).
pub fn theorem4_check(sigma: &Configuration, w: Complex64) -> Result<Comparison> {
    theorem4_check_with(sigma, w, &DerivativeOptions::default())
}

pub fn theorem4_check_with(sigma: &Configuration, w: Complex64, opts: &DerivativeOptions) -> Result<Comparison> {
    let (num, oracle, f) = match sigma.domain() {
        DomainDescriptor::Sphere => {
            let f = super::GffSphere;
            (holo_derivative_point_with(&f, sigma, w, opts)?, ward_rhs_sphere(w, sigma)?, f.eval(sigma)?)
        }
        DomainDescriptor::HalfPlane => {
            let f = HalfPlaneOnePoint;
            (holo_derivative_point_with(&f, sigma, w, opts)?, ward_rhs_halfplane(w, sigma)?, f.eval(sigma)?)
        }
        other => return Err(Error::Unsupported(format!("no Ward oracle on {other:?}"))),
    };
    let zero = Complex64::new(0.0, 0.0);
    Ok(Comparison { value: num.value, oracle: connected_subtract(oracle, zero, f), error: num.error })
}

/// Boundary-only holomorphic derivative at `w` against the sum of the
/// point-only antiholomorphic derivatives at `w̄`.
pub fn reflection_decomposition_check(f: &dyn Functional, sigma: &Configuration, w: Complex64) -> Result<Comparison> {
    reflection_decomposition_check_with(f, sigma, w, &DerivativeOptions::default())
}

pub fn reflection_decomposition_check_with(
    f: &dyn Functional,
    sigma: &Configuration,
    w: Complex64,
    opts: &DerivativeOptions,
) -> Result<Comparison> {
    check_w(sigma, w)?;
    if !sigma.has_boundary() {
        return Err(Error::InvalidConfiguration("reflection needs a boundary".into()));
    }
    let opts = *opts;
    let bdry = holo_derivative_point_with(f, sigma, w, &opts.with_part(Part::Boundary))?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = bdry.error;
    for j in 0..sigma.len() {
        let d = antiholo_derivative_point_with(f, sigma, w.conj(), &opts.with_part(Part::Point(j)))?;
        sum += d.value;
        err += d.error;
    }
    Ok(Comparison { value: bdry.value, oracle: sum, error: err })
}

/// Point-only derivatives plus a Cauchy integral of boundary-only
/// derivatives over a loop in the domain around `w`. On the sphere only the
/// point part is present.
pub fn boundary_continuum_form(f: &dyn Functional, sigma: &Configuration, w: Complex64) -> Result<Comparison> {
    check_w(sigma, w)?;
    let opts = DerivativeOptions::default();
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for j in 0..sigma.len() {
        let d = holo_derivative_point_with(f, sigma, w, &opts.with_part(Part::Point(j)))?;
        value += d.value;
        err += d.error;
    }
    if sigma.has_boundary() {
        if !matches!(sigma.domain(), DomainDescriptor::HalfPlane) || sigma.boundary_map().is_some() {
            return Err(Error::Unsupported("continuum form is implemented on the undeformed half-plane".into()));
        }
        if !(w.im > 0.0) {
            return Err(Error::InvalidConfiguration(format!("{w} is not in the upper half-plane")));
        }
        // z(ζ) = (w - w̄ζ)/(1 - ζ) maps |ζ| = r onto a loop around w in ℍ
        let wb = w.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..CONTINUUM_NODES {
            let zeta = Complex64::from_polar(CONTINUUM_RADIUS, 2.0 * PI * k as f64 / CONTINUUM_NODES as f64);
            let z = (w - wb * zeta) / (1.0 - zeta);
            let dz = (w - wb) / ((1.0 - zeta) * (1.0 - zeta));
            let d = holo_derivative_point_with(f, sigma, z, &opts.with_part(Part::Boundary))?;
            acc += d.value / (z - w) * dz * zeta;
            err += d.error * (dz * zeta / (z - w)).norm() / CONTINUUM_NODES as f64;
        }
        value += acc / CONTINUUM_NODES as f64;
    }
    let oracle = match sigma.domain() {
        DomainDescriptor::Sphere => ward_rhs_sphere(w, sigma)?,
        DomainDescriptor::HalfPlane => ward_rhs_halfplane(w, sigma)?,
        other => return Err(Error::Unsupported(format!("no Ward oracle on {other:?}"))),
    };
    Ok(Comparison { value, oracle, error: err })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_point_closed_form() {
        let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
        let w = c(0.4, 0.9);
        let (z1, z2) = (c(0.0, 0.0), c(1.0, 0.0));
        let want = 0.5 * (z1 - z2).powi(2) / ((w - z1).powi(2) * (w - z2).powi(2));
        assert!((ward_rhs_sphere(w, &s).unwrap() - want).norm() < 1e-14);
    }

    #[test]
    fn halfplane_closed_form_and_reality() {
        let z = c(0.0, 1.0);
        let s = Configuration::halfplane(vec![z], &[0.5]).unwrap();
        let w = c(0.7, 0.4);
        let f = 0.5;
        let want = 0.5 * (z - z.conj()).powi(2) / ((w - z).powi(2) * (w - z.conj()).powi(2)) * f;
        assert!((ward_rhs_halfplane(w, &s).unwrap() - want).norm() < 1e-12);
        let x = c(0.3, 0.0);
        let v = ward_rhs_halfplane(x, &s).unwrap();
        assert!(v.im.abs() < 1e-13);
    }
}
