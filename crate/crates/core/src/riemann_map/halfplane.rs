use num_complex::Complex64;

use super::curve::BoundaryCurve;
use super::theodorsen::{solve_disk_map_at, RiemannMapResult};
use crate::analytic_core::{newton_invert, ConformalMap, Mobius};
use crate::error::{Error, Result};

/// Boundary of `Φ(ℍ)` seen through the Cayley map centred at `z0`:
/// `φ ↦ C_{z0}(Φ(x(φ)))` with `x(φ) = C_{z0}^{-1}(e^{iφ})`, so that the
/// undeformed half-plane gives the unit circle with uniform speed.
pub fn cayley_boundary(phi: &ConformalMap, z0: Complex64) -> Result<BoundaryCurve> {
    if !(z0.im > 0.0) {
        return Err(Error::InvalidDomain(format!("Cayley center {z0} must lie in the upper half-plane")));
    }
    let (x0, y0) = (z0.re, z0.im);
    let i2y = Complex64::new(0.0, 2.0 * y0);
    BoundaryCurve::from_fn(|t| {
        let x = x0 - y0 / (0.5 * t).tan();
        match phi.eval(Complex64::new(x, 0.0)) {
            // 1 - 2i·Im z0 / (ζ - z̄0), stable as ζ → ∞
            Ok(zeta) => 1.0 - i2y / (zeta - z0.conj()),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    })
}

/// Conformal map `m = C⁻¹ ∘ F⁻¹ ∘ C` from a deformed half-plane onto ℍ,
/// where `F` is the Riemann map onto the Cayley image of the domain.
#[derive(Debug, Clone)]
pub struct HalfPlaneUniformizer {
    pub cayley: Mobius,
    pub riemann: RiemannMapResult,
}

impl HalfPlaneUniformizer {
    pub fn eval_with_deriv(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let zeta = self.cayley.eval(z);
        let f = &self.riemann.map;
        let u = newton_invert(f, zeta, f.inverse_guess(zeta))?;
        let du = f.deriv(u)?;
        if du.norm() == 0.0 {
            return Err(Error::DegenerateDerivative { at: u });
        }
        let back = self.cayley.inverse();
        Ok((back.eval(u), back.deriv(u) * self.cayley.deriv(z) / du))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_with_deriv(z).map(|(m, _)| m)
    }

    /// The uniformizer as a composable map.
    /// `|m'(z0)|`, i.e. the inverse conformal radius of the Cayley image.
    pub fn center_scale(&self) -> f64 {
        1.0 / self.riemann.disk.conformal_radius()
    }

    pub fn as_map(&self) -> ConformalMap {
        ConformalMap::mobius(self.cayley.inverse())
            .compose(&self.riemann.map.inverse())
            .compose(&ConformalMap::mobius(self.cayley))
    }
}

/// Uniformizer of `Φ(ℍ)` built around a point `z0` of the deformed domain,
/// normalised so that `m(z0) = z0`.
pub fn halfplane_uniformizer(phi: &ConformalMap, z0: Complex64) -> Result<HalfPlaneUniformizer> {
    let curve = cayley_boundary(phi, z0)?;
    let cayley = Mobius::cayley(z0)?;
    let riemann = solve_disk_map_at(&curve, Complex64::new(0.0, 0.0))?;
    Ok(HalfPlaneUniformizer { cayley, riemann })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_is_undone() {
        // Φ(z) = z + 0.3 maps ℍ to itself; m must send Φ(ℍ) to ℍ with
        // Im m / |m'| preserved
        let phi = ConformalMap::mobius(Mobius::translation(Complex64::new(0.3, 0.0)));
        let z0 = Complex64::new(0.1, 0.8);
        let u = halfplane_uniformizer(&phi, z0).unwrap();
        let z = Complex64::new(-0.2, 0.5);
        let (m, dm) = u.eval_with_deriv(z).unwrap();
        assert!(m.im > 0.0);
        assert!((m.im / dm.norm() - z.im).abs() < 1e-12);
    }

    #[test]
    fn bump_uniformizer_maps_boundary_to_axis() {
        let phi = ConformalMap::custom_with_derivative(
            "bump",
            |z| z + Complex64::new(0.0, 0.02) / (z - Complex64::new(0.0, -1.0)),
            |z| 1.0 - Complex64::new(0.0, 0.02) / ((z - Complex64::new(0.0, -1.0)) * (z - Complex64::new(0.0, -1.0))),
            1.0,
            crate::analytic_core::DomainDescriptor::HalfPlane,
        );
        let u = halfplane_uniformizer(&phi, Complex64::new(0.0, 1.0)).unwrap();
        for x in [-2.0, -0.5, 0.0, 0.7, 3.0] {
            let b = phi.eval(Complex64::new(x, 0.0)).unwrap();
            assert!(u.eval(b).unwrap().im.abs() < 1e-10);
        }
    }
}
