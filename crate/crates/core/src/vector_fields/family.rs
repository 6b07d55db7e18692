use num_complex::Complex64;

use super::field::VectorField;
use crate::analytic_core::{ConformalMap, MapKind};
use crate::error::{Error, Result};

/// Anchor point `a ∉ A` of a deformation family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    Infinity,
    Finite(Complex64),
}

/// `g_η` built from a vector field, either `z + ηh(z)` (anchor ∞) or
/// `a + (z-a)/(1 - ηh(z)/(z-a))`.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub anchor: Anchor,
    pub field: VectorField,
    pub eta: f64,
}

impl FamilyMember {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self.anchor {
            Anchor::Infinity => Ok(z + self.eta * self.field.eval(z)?),
            Anchor::Finite(a) => {
                let u = z - a;
                if u.norm() == 0.0 {
                    return Ok(a);
                }
                let den = 1.0 - self.eta * self.field.eval(z)? / u;
                Ok(a + u / den)
            }
        }
    }

    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        match self.anchor {
            Anchor::Infinity => Ok(1.0 + self.eta * self.field.deriv(z)?),
            Anchor::Finite(a) => {
                let u = z - a;
                if u.norm() == 0.0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let h = self.field.eval(z)?;
                let dh = self.field.deriv(z)?;
                let den = 1.0 - self.eta * h / u;
                let dden = -self.eta * (dh * u - h) / (u * u);
                Ok((den - u * dden) / (den * den))
            }
        }
    }

    pub fn local_scale(&self, z: Complex64) -> f64 {
        let s = self.field.local_scale(z);
        match self.anchor {
            Anchor::Infinity => s,
            Anchor::Finite(a) => s.min(0.5 * (z - a).norm()),
        }
    }
}

/// The deformation family member `g_η` for the field `h` and anchor `a`.
///
/// Fails with a step error when the denominator of the anchored form gets
/// close to zero (or `∂g_η` to zero) on the probe grid of the field's domain.
pub fn family_form(h: &VectorField, anchor: Anchor, eta: f64) -> Result<ConformalMap> {
    if eta == 0.0 {
        return Ok(ConformalMap::identity().with_domain(h.domain().clone()));
    }
    let member = FamilyMember { anchor, field: h.clone(), eta };
    for z in h.domain().probe_grid() {
        let ratio = match anchor {
            Anchor::Infinity => eta * h.deriv(z)?,
            Anchor::Finite(a) => eta * h.eval(z)? / (z - a),
        };
        if ratio.norm() >= 0.5 || !ratio.re.is_finite() {
            return Err(Error::StepTooLarge(format!(
                "|η h| ratio {:.3e} at probe point {z} (η = {eta:e})",
                ratio.norm()
            )));
        }
    }
    Ok(ConformalMap::new(MapKind::Family(member), h.domain().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_fields::special_field_hw_in;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_step_is_identity() {
        let h = special_field_hw_in(c(0.5, 0.8), 0.3, 0.1).unwrap();
        let g = family_form(&h, Anchor::Finite(c(0.5, 0.8)), 0.0).unwrap();
        assert_eq!(g.eval(c(0.1, 0.2)).unwrap(), c(0.1, 0.2));
    }

    #[test]
    fn anchored_pole_family_first_order() {
        let w = c(0.5, 0.8);
        let theta = 0.7;
        let h = special_field_hw_in(w, theta, 0.1).unwrap();
        let z = c(-0.3, 0.1);
        let eta = 1e-4;
        let g = family_form(&h, Anchor::Finite(w), eta).unwrap();
        let lin = z + eta * Complex64::from_polar(1.0, theta) / (w - z);
        assert!((g.eval(z).unwrap() - lin).norm() < 10.0 * eta * eta);
    }

    #[test]
    fn right_derivative_recovers_field() {
        let w = c(0.2, 1.1);
        let h = special_field_hw_in(w, -0.4, 0.1).unwrap();
        for anchor in [Anchor::Infinity, Anchor::Finite(w), Anchor::Finite(c(-3.0, 0.0))] {
            let z = c(0.4, -0.3);
            let d = |eta: f64| (family_form(&h, anchor, eta).unwrap().eval(z).unwrap() - z) / eta;
            let eta = 1e-4;
            let rich = 2.0 * d(eta / 2.0) - d(eta);
            assert!((rich - h.eval(z).unwrap()).norm() < 1e-7, "{anchor:?}");
        }
    }

    #[test]
    fn oversized_step_is_rejected() {
        let w = c(0.0, 0.0);
        let h = special_field_hw_in(w, 0.0, 0.1).unwrap();
        assert!(matches!(family_form(&h, Anchor::Finite(w), 1.0), Err(Error::StepTooLarge(_))));
    }

    #[test]
    fn exact_derivative_matches_contour() {
        let w = c(0.5, 0.8);
        let h = special_field_hw_in(w, 0.3, 0.1).unwrap();
        let g = family_form(&h, Anchor::Finite(w), 1e-2).unwrap();
        let probe = [c(0.1, 0.1), c(-0.5, 0.3), c(1.2, -0.4)];
        assert!(g.derivative_consistency(&probe).unwrap() < 1e-9);
    }
}
