use num_complex::Complex64;

use super::map::ConformalMap;
use super::mobius::Mobius;
use crate::error::{Error, Result};

/// Simply connected (or annular) regions of the Riemann sphere.
#[derive(Debug, Clone)]
pub enum DomainDescriptor {
    UnitDisk,
    /// `Ĉ \ closure(𝔻)`, containing ∞.
    Exterior,
    HalfPlane,
    Sphere,
    Annulus { inner: f64, outer: f64 },
    MobiusImage { base: Box<DomainDescriptor>, map: Mobius },
    MapImage { base: Box<DomainDescriptor>, map: Box<ConformalMap> },
    /// `Ĉ_w`: the sphere minus a closed disk of the given radius around `w`.
    PuncturedComplement { w: Complex64, radius: f64 },
}

impl DomainDescriptor {
    pub fn annulus(inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && inner < outer && outer.is_finite()) {
            return Err(Error::InvalidDomain(format!(
                "annulus requires 0 < r < R, got r = {inner}, R = {outer}"
            )));
        }
        Ok(DomainDescriptor::Annulus { inner, outer })
    }

    pub fn punctured(w: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidDomain(format!("excluded radius {radius} must be positive")));
        }
        Ok(DomainDescriptor::PuncturedComplement { w, radius })
    }

    /// Open disk `|z - center| < radius`.
    pub fn disk(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidDomain(format!("disk radius {radius} must be positive")));
        }
        if radius == 1.0 && center == Complex64::new(0.0, 0.0) {
            return Ok(DomainDescriptor::UnitDisk);
        }
        Ok(DomainDescriptor::MobiusImage {
            base: Box::new(DomainDescriptor::UnitDisk),
            map: Mobius::affine(Complex64::new(radius, 0.0), center)?,
        })
    }

    /// Center and radius when the domain is a round disk.
    pub fn as_disk(&self) -> Option<(Complex64, f64)> {
        match self {
            DomainDescriptor::UnitDisk => Some((Complex64::new(0.0, 0.0), 1.0)),
            DomainDescriptor::MobiusImage { base, map } if map.is_affine() => {
                let (c, r) = base.as_disk()?;
                let scale = map.a / map.d;
                Some((map.eval(c), r * scale.norm()))
            }
            _ => None,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return self.contains_infinity();
        }
        match self {
            DomainDescriptor::UnitDisk => z.norm() < 1.0,
            DomainDescriptor::Exterior => z.norm() > 1.0,
            DomainDescriptor::HalfPlane => z.im > 0.0,
            DomainDescriptor::Sphere => true,
            DomainDescriptor::Annulus { inner, outer } => {
                let r = z.norm();
                r > *inner && r < *outer
            }
            DomainDescriptor::MobiusImage { base, map } => {
                let inv = map.inverse();
                if let Some(p) = inv.pole() {
                    if (z - p).norm() == 0.0 {
                        return base.contains_infinity();
                    }
                }
                base.contains(inv.eval(z))
            }
            DomainDescriptor::MapImage { base, map } => match map.inverse().eval(z) {
                Ok(u) => base.contains(u),
                Err(_) => false,
            },
            DomainDescriptor::PuncturedComplement { w, radius } => (z - w).norm() > *radius,
        }
    }

    pub fn contains_infinity(&self) -> bool {
        match self {
            DomainDescriptor::UnitDisk | DomainDescriptor::HalfPlane | DomainDescriptor::Annulus { .. } => false,
            DomainDescriptor::Exterior | DomainDescriptor::Sphere | DomainDescriptor::PuncturedComplement { .. } => true,
            DomainDescriptor::MobiusImage { base, map } => match map.inverse().at_infinity() {
                None => base.contains_infinity(),
                Some(p) => base.contains(p),
            },
            DomainDescriptor::MapImage { base, .. } => base.contains_infinity(),
        }
    }

    /// True when the domain has a boundary that deformations can move.
    pub fn has_boundary(&self) -> bool {
        !matches!(self, DomainDescriptor::Sphere)
    }

    /// 64 probe points on two concentric circles adapted to the domain.
    pub fn probe_grid(&self) -> Vec<Complex64> {
        fn rings(center: Complex64, r1: f64, r2: f64) -> Vec<Complex64> {
            let mut out = Vec::with_capacity(64);
            for (i, r) in [r1, r2].into_iter().enumerate() {
                for k in 0..32 {
                    let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.5 * i as f64) / 32.0;
                    out.push(center + Complex64::from_polar(r, t));
                }
            }
            out
        }
        let origin = Complex64::new(0.0, 0.0);
        match self {
            DomainDescriptor::UnitDisk => rings(origin, 0.45, 0.9),
            DomainDescriptor::Exterior => rings(origin, 1.2, 2.5),
            DomainDescriptor::Sphere => rings(origin, 0.5, 2.0),
            DomainDescriptor::HalfPlane => rings(origin, 0.45, 0.9)
                .into_iter()
                .map(|u| Complex64::new(0.0, 1.0) * (1.0 + u) / (1.0 - u))
                .collect(),
            DomainDescriptor::Annulus { inner, outer } => {
                let d = outer - inner;
                rings(origin, inner + d / 3.0, inner + 2.0 * d / 3.0)
            }
            DomainDescriptor::PuncturedComplement { w, radius } => rings(*w, 2.0 * radius, 4.0 * radius),
            DomainDescriptor::MobiusImage { base, map } => base.probe_grid().into_iter().map(|z| map.eval(z)).collect(),
            DomainDescriptor::MapImage { base, map } => base
                .probe_grid()
                .into_iter()
                .filter_map(|z| map.eval(z).ok())
                .collect(),
        }
    }

    /// The undeformed domain underneath any chain of map images.
    pub fn root(&self) -> &DomainDescriptor {
        match self {
            DomainDescriptor::MapImage { base, .. } | DomainDescriptor::MobiusImage { base, .. } => base.root(),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let z = Complex64::new(0.3, 0.4);
        assert!(DomainDescriptor::UnitDisk.contains(z));
        assert!(!DomainDescriptor::Exterior.contains(z));
        assert!(DomainDescriptor::HalfPlane.contains(z));
        assert!(DomainDescriptor::annulus(1.0, 0.5).is_err());
        let d = DomainDescriptor::disk(Complex64::new(1.0, 0.0), 0.5).unwrap();
        assert!(d.contains(Complex64::new(1.2, 0.1)));
        assert!(!d.contains(z));
        assert_eq!(d.as_disk().unwrap().1, 0.5);
        let p = DomainDescriptor::punctured(Complex64::new(0.0, 1.0), 0.1).unwrap();
        assert!(p.contains_infinity());
        assert!(!p.contains(Complex64::new(0.0, 1.05)));
    }
}
