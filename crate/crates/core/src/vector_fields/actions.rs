use num_complex::Complex64;

use super::field::{FieldKind, VectorField};
use crate::analytic_core::{ConformalMap, DomainDescriptor};
use crate::error::Result;

/// `H_g h = (h ∂g) ∘ g⁻¹`, a field on the image domain.
///
/// Global fields pushed forward by Möbius maps stay global and are returned
/// in closed form.
pub fn pushforward(g: &ConformalMap, h: &VectorField) -> Result<VectorField> {
    let image = DomainDescriptor::MapImage { base: Box::new(h.domain().clone()), map: Box::new(g.clone()) };
    if matches!(g.kind(), crate::analytic_core::MapKind::Identity) {
        return Ok(h.clone());
    }
    if let (Some(m), Some(_)) = (g.as_mobius(), h.as_quadratic()) {
        // the image field is again quadratic; recover it from three samples
        let inv = m.inverse();
        let nodes = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let mut vals = [Complex64::new(0.0, 0.0); 3];
        for (v, &w) in vals.iter_mut().zip(&nodes) {
            let u = inv.eval(w);
            *v = h.eval(u)? * m.deriv(u);
        }
        if vals.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            let a = vals[0];
            // b + c = v1 - a, i b - c = v2 - a
            let p = vals[1] - a;
            let q = vals[2] - a;
            let i = Complex64::new(0.0, 1.0);
            let b = (p + q) / (1.0 + i);
            let c = p - b;
            return Ok(VectorField::quadratic(a, b, c, image));
        }
    }
    Ok(VectorField::new(FieldKind::Pushforward { map: g.clone(), field: h.clone() }, image))
}

/// Left action `h ∂g`.
pub fn act_left(g: &ConformalMap, h: &VectorField) -> VectorField {
    if matches!(g.kind(), crate::analytic_core::MapKind::Identity) {
        return h.clone();
    }
    VectorField::new(FieldKind::LeftAction { map: g.clone(), field: h.clone() }, h.domain().clone())
}

/// Right action `h ∘ g`.
pub fn act_right(g: &ConformalMap, h: &VectorField) -> VectorField {
    if matches!(g.kind(), crate::analytic_core::MapKind::Identity) {
        return h.clone();
    }
    VectorField::new(FieldKind::RightAction { map: g.clone(), field: h.clone() }, g.domain().clone())
}
