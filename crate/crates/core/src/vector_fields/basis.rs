use num_complex::Complex64;

use super::field::{FieldKind, Sign, VectorField};
use crate::analytic_core::{try_contour_integral, CircleContour, DomainDescriptor};
use crate::error::{Error, Result};

/// Radius of the circle on which coefficient functionals are evaluated.
pub const COEFF_RADIUS: f64 = 0.7;

/// `H_{n,s}(z) = e^{iπs/4} z^n` on the unit disk.
pub fn basis_h(n: i32, s: Sign) -> VectorField {
    let domain = if n >= 0 { DomainDescriptor::UnitDisk } else { DomainDescriptor::Exterior };
    VectorField::new(FieldKind::Monomial { n, s }, domain)
}

/// `c_{n,s}(h) = Re ∮ z^{-n-1} e^{-iπs/4} h(z) dz` on the default circle.
pub fn coeff_c(h: &VectorField, n: i32, s: Sign) -> Result<f64> {
    coeff_c_on(h, n, s, &CircleContour::new(Complex64::new(0.0, 0.0), COEFF_RADIUS))
}

pub fn coeff_c_on(h: &VectorField, n: i32, s: Sign, contour: &CircleContour) -> Result<f64> {
    let phase = s.phase().conj();
    let v = try_contour_integral(|z| Ok(h.eval(z)? * z.powi(-n - 1) * phase), contour)?;
    Ok(v.re)
}

/// `Σ_{0≤n≤N, s} c_{n,s}(h) H_{n,s}` as a coefficient series.
pub fn reconstruct(h: &VectorField, n_max: usize) -> Result<VectorField> {
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as i32 {
        let mut a = Complex64::new(0.0, 0.0);
        for s in Sign::BOTH {
            a += coeff_c(h, n, s)? * s.phase();
        }
        coeffs.push(a);
    }
    Ok(VectorField::series(0, coeffs, DomainDescriptor::UnitDisk))
}

/// `h^{(w)}(z) = e^{iθ}/(w - z)` on `Ĉ_w` with a small excluded disk.
pub fn special_field_hw(w: Complex64, theta: f64) -> VectorField {
    special_field_hw_in(w, theta, 1e-2).expect("positive radius")
}

/// `h^{(w)}` on `Ĉ_w` with the given excluded radius.
pub fn special_field_hw_in(w: Complex64, theta: f64, radius: f64) -> Result<VectorField> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::InvalidDomain("pole of h^(w) must be finite".into()));
    }
    Ok(VectorField::new(FieldKind::Pole { w, phase: theta }, DomainDescriptor::punctured(w, radius)?))
}
