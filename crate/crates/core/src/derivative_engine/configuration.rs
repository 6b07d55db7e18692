use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analytic_core::{ConformalMap, DomainDescriptor};
use crate::error::{Error, Result};

/// Field attached to a marked point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldData {
    /// Vertex field of the free boson with `δ = δ̃ = α²/2`.
    Gff { alpha: f64 },
    Primary { delta: f64, delta_bar: f64 },
}

impl FieldData {
    /// `(δ, δ̃)`.
    pub fn dims(&self) -> (f64, f64) {
        match *self {
            FieldData::Gff { alpha } => (0.5 * alpha * alpha, 0.5 * alpha * alpha),
            FieldData::Primary { delta, delta_bar } => (delta, delta_bar),
        }
    }

    pub fn charge(&self) -> Option<f64> {
        match *self {
            FieldData::Gff { alpha } => Some(alpha),
            FieldData::Primary { .. } => None,
        }
    }
}

/// Which parts of a configuration a deformation moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    All,
    Point(usize),
    Boundary,
}

impl Part {
    fn moves_point(self, j: usize) -> bool {
        match self {
            Part::All => true,
            Part::Point(k) => k == j,
            Part::Boundary => false,
        }
    }

    fn moves_boundary(self) -> bool {
        matches!(self, Part::All | Part::Boundary)
    }
}

/// A domain with marked points and fields.
///
/// Conformal actions move the points, compose onto the boundary map and
/// accumulate `log ∂g(z_j)`; functionals apply the primary Jacobian factors
/// from those logs when they evaluate.
#[derive(Debug, Clone)]
pub struct Configuration {
    domain: DomainDescriptor,
    boundary_map: Option<ConformalMap>,
    points: Vec<Complex64>,
    data: Vec<FieldData>,
    log_jacobians: Vec<Complex64>,
}

impl Configuration {
    pub fn new(domain: DomainDescriptor, points: Vec<Complex64>, data: Vec<FieldData>) -> Result<Self> {
        if points.len() != data.len() {
            return Err(Error::InvalidConfiguration(format!(
                "{} points but {} field data entries",
                points.len(),
                data.len()
            )));
        }
        for (j, z) in points.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::InvalidConfiguration(format!("point {j} is not finite")));
            }
            if !domain.contains(*z) {
                return Err(Error::InvalidConfiguration(format!("point {j} = {z} lies outside the domain")));
            }
            for (k, u) in points.iter().enumerate().take(j) {
                if z == u {
                    return Err(Error::SingularConfiguration(format!("points {k} and {j} coincide at {z}")));
                }
            }
        }
        if matches!(domain, DomainDescriptor::Sphere) && !data.is_empty() {
            let charges: Option<Vec<f64>> = data.iter().map(|d| d.charge()).collect();
            if let Some(c) = charges {
                let total: f64 = c.iter().sum();
                if total.abs() > 1e-12 {
                    return Err(Error::InvalidConfiguration(format!("charges sum to {total}, not 0")));
                }
            }
        }
        let n = points.len();
        Ok(Configuration { domain, boundary_map: None, points, data, log_jacobians: vec![Complex64::new(0.0, 0.0); n] })
    }

    /// Vertex fields on the sphere.
    pub fn sphere_gff(points: Vec<Complex64>, charges: &[f64]) -> Result<Self> {
        let data = charges.iter().map(|&alpha| FieldData::Gff { alpha }).collect();
        Configuration::new(DomainDescriptor::Sphere, points, data)
    }

    /// Spinless primaries of dimension `δ` on the upper half-plane.
    pub fn halfplane(points: Vec<Complex64>, deltas: &[f64]) -> Result<Self> {
        let data = deltas.iter().map(|&d| FieldData::Primary { delta: d, delta_bar: d }).collect();
        Configuration::new(DomainDescriptor::HalfPlane, points, data)
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    /// Accumulated map applied to the boundary of the root domain.
    pub fn boundary_map(&self) -> Option<&ConformalMap> {
        self.boundary_map.as_ref()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn data(&self) -> &[FieldData] {
        &self.data
    }

    pub fn log_jacobians(&self) -> &[Complex64] {
        &self.log_jacobians
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `∏_j (∂g)^{δ_j} (∂g)̄^{δ̃_j}` for the accumulated action.
    pub fn jacobian_factor(&self) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (l, d) in self.log_jacobians.iter().zip(&self.data) {
            let (delta, delta_bar) = d.dims();
            s += delta * l + delta_bar * l.conj();
        }
        s.exp()
    }

    pub fn has_boundary(&self) -> bool {
        self.domain.has_boundary()
    }

    /// `min(1, smallest pairwise distance)`.
    pub fn scale(&self) -> f64 {
        let mut s: f64 = 1.0;
        for (j, z) in self.points.iter().enumerate() {
            for u in &self.points[..j] {
                s = s.min((z - u).norm());
            }
        }
        s
    }

    /// Samples of the (possibly deformed) boundary.
    pub fn boundary_samples(&self) -> Vec<Complex64> {
        let base = root_boundary(&self.domain);
        match &self.boundary_map {
            None => base,
            Some(g) => base.into_iter().filter_map(|z| g.eval(z).ok()).collect(),
        }
    }

    /// Distance from `w` to the boundary, exact for the undeformed disk and
    /// half-plane and sampled otherwise.
    pub fn boundary_distance(&self, w: Complex64) -> Option<f64> {
        if self.boundary_map.is_none() {
            match self.domain {
                DomainDescriptor::Sphere => return None,
                DomainDescriptor::HalfPlane => return Some(w.im.abs()),
                DomainDescriptor::UnitDisk | DomainDescriptor::Exterior => return Some((1.0 - w.norm()).abs()),
                _ => {}
            }
        }
        let samples = self.boundary_samples();
        if samples.is_empty() {
            return None;
        }
        Some(samples.iter().map(|b| (b - w).norm()).fold(f64::INFINITY, f64::min))
    }

    /// Replace the marked points, keeping data and accumulated factors.
    pub fn with_points(&self, points: Vec<Complex64>) -> Result<Self> {
        if points.len() != self.points.len() {
            return Err(Error::InvalidConfiguration("point count changed".into()));
        }
        let mut out = self.clone();
        out.points = points;
        Ok(out)
    }
}

fn root_boundary(domain: &DomainDescriptor) -> Vec<Complex64> {
    let circle = |c: Complex64, r: f64| -> Vec<Complex64> {
        (0..64).map(|k| c + Complex64::from_polar(r, 2.0 * PI * k as f64 / 64.0)).collect()
    };
    match domain {
        DomainDescriptor::Sphere => Vec::new(),
        DomainDescriptor::UnitDisk | DomainDescriptor::Exterior => circle(Complex64::new(0.0, 0.0), 1.0),
        DomainDescriptor::HalfPlane => (0..64)
            .map(|k| Complex64::new((PI * (k as f64 + 0.5) / 64.0 - 0.5 * PI).tan(), 0.0))
            .collect(),
        DomainDescriptor::Annulus { inner, outer } => {
            let mut v = circle(Complex64::new(0.0, 0.0), *inner);
            v.extend(circle(Complex64::new(0.0, 0.0), *outer));
            v
        }
        DomainDescriptor::PuncturedComplement { w, radius } => circle(*w, *radius),
        DomainDescriptor::MobiusImage { base, map } => root_boundary(base)
            .into_iter()
            .map(|z| map.eval(z))
            .filter(|z| z.re.is_finite() && z.im.is_finite())
            .collect(),
        DomainDescriptor::MapImage { base, map } => {
            root_boundary(base).into_iter().filter_map(|z| map.eval(z).ok()).collect()
        }
    }
}

/// `g·Σ`.
pub fn apply_action(g: &ConformalMap, sigma: &Configuration) -> Result<Configuration> {
    apply_action_part(g, sigma, Part::All)
}

/// Act with `g` on the selected part of `Σ` only, leaving the rest frozen.
pub fn apply_action_part(g: &ConformalMap, sigma: &Configuration, part: Part) -> Result<Configuration> {
    if let Part::Point(j) = part {
        if j >= sigma.len() {
            return Err(Error::InvalidConfiguration(format!("no marked point {j}")));
        }
    }
    let mut out = sigma.clone();
    for j in 0..sigma.len() {
        if !part.moves_point(j) {
            continue;
        }
        let z = sigma.points[j];
        let (v, d) = g.eval_with_deriv(z).map_err(|e| Error::InvalidDeformation(format!("at marked point {z}: {e}")))?;
        if !(v.re.is_finite() && v.im.is_finite() && d.re.is_finite() && d.im.is_finite()) || d.norm() == 0.0 {
            return Err(Error::InvalidDeformation(format!("map is singular at marked point {z}")));
        }
        out.points[j] = v;
        out.log_jacobians[j] += d.ln();
    }
    if part.moves_boundary() && sigma.has_boundary() {
        out.boundary_map = Some(match &sigma.boundary_map {
            None => g.clone(),
            Some(prev) => g.compose(prev),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_core::Mobius;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, 1.0]).is_err());
        assert!(matches!(
            Configuration::sphere_gff(vec![c(0.0, 0.0), c(0.0, 0.0)], &[1.0, -1.0]),
            Err(Error::SingularConfiguration(_))
        ));
        assert!(Configuration::halfplane(vec![c(0.0, -1.0)], &[0.5]).is_err());
    }

    #[test]
    fn identity_action_is_trivial() {
        let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
        let t = apply_action(&ConformalMap::identity(), &s).unwrap();
        assert_eq!(t.points(), s.points());
        assert_eq!(t.jacobian_factor(), c(1.0, 0.0));
    }

    #[test]
    fn actions_accumulate_and_singular_points_fail() {
        let s = Configuration::sphere_gff(vec![c(0.5, 0.0), c(1.0, 1.0)], &[1.0, -1.0]).unwrap();
        let g = ConformalMap::mobius(Mobius::affine(c(2.0, 0.0), c(1.0, 0.0)).unwrap());
        let t = apply_action(&g, &apply_action(&g, &s).unwrap()).unwrap();
        assert!((t.points()[0] - c(5.0, 0.0)).norm() < 1e-15);
        assert!((t.log_jacobians()[1] - c(4.0f64.ln(), 0.0)).norm() < 1e-15);
        let inv = ConformalMap::mobius(Mobius::inversion());
        let s0 = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
        assert!(matches!(apply_action(&inv, &s0), Err(Error::InvalidDeformation(_))));
    }

    #[test]
    fn parts_move_selectively() {
        let s = Configuration::halfplane(vec![c(0.0, 1.0)], &[0.5]).unwrap();
        let g = ConformalMap::mobius(Mobius::translation(c(0.25, 0.0)));
        let p = apply_action_part(&g, &s, Part::Point(0)).unwrap();
        assert!(p.boundary_map().is_none());
        assert_eq!(p.points()[0], c(0.25, 1.0));
        let b = apply_action_part(&g, &s, Part::Boundary).unwrap();
        assert_eq!(b.points()[0], c(0.0, 1.0));
        assert!(b.boundary_map().is_some());
        assert!(apply_action_part(&g, &s, Part::Point(3)).is_err());
    }
}
