use num_complex::Complex64;

use super::map::ConformalMap;
use crate::error::{Error, Result};

/// `{g, w} = g'''/g' - (3/2) (g''/g')^2`.
pub fn schwarzian(g: &ConformalMap, w: Complex64) -> Result<Complex64> {
    let [d1, d2, d3] = g.higher_derivs(w)?;
    if !(d1.norm() > 1e-300) {
        return Err(Error::DegenerateDerivative { at: w });
    }
    let r = d2 / d1;
    Ok(d3 / d1 - 1.5 * r * r)
}

/// Schwarzian from explicit derivative values.
pub fn schwarzian_from_derivs(d1: Complex64, d2: Complex64, d3: Complex64) -> Result<Complex64> {
    if !(d1.norm() > 1e-300) {
        return Err(Error::DegenerateDerivative { at: Complex64::new(f64::NAN, f64::NAN) });
    }
    let r = d2 / d1;
    Ok(d3 / d1 - 1.5 * r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_core::{DomainDescriptor, Mobius};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_map() {
        let g = ConformalMap::polynomial(2, vec![c(1.0, 0.0)], DomainDescriptor::Sphere).unwrap();
        let s = schwarzian(&g, c(1.0, 0.0)).unwrap();
        assert!((s + 1.5).norm() < 1e-11);
    }

    #[test]
    fn mobius_is_annihilated() {
        let g = ConformalMap::mobius(Mobius::new(c(1.0, 0.2), c(0.3, 0.0), c(0.5, -0.1), c(1.0, 0.0)).unwrap());
        let s = schwarzian(&g, c(0.1, 0.4)).unwrap();
        assert!(s.norm() < 1e-12, "{s}");
    }

    #[test]
    fn critical_point_is_degenerate() {
        let g = ConformalMap::polynomial(2, vec![c(1.0, 0.0)], DomainDescriptor::Sphere).unwrap();
        assert!(schwarzian(&g, c(0.0, 0.0)).is_err());
    }
}
