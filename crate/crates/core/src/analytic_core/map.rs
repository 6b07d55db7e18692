use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::contour::cauchy_derivatives;
use super::domain::DomainDescriptor;
use super::mobius::Mobius;
use super::newton::newton_invert;
use crate::error::{Error, Result};
use crate::riemann_map::DiskMap;
use crate::vector_fields::{FamilyMember, FlowMap};

type MapFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// User supplied analytic map with an optional exact derivative.
#[derive(Clone)]
pub struct CustomMap {
    pub label: String,
    pub f: MapFn,
    pub df: Option<MapFn>,
    /// Distance scale on which the map is analytic around typical points.
    pub scale: f64,
}

/// Representation of a conformal map.
#[derive(Clone)]
pub enum MapKind {
    Identity,
    Mobius(Mobius),
    /// `Σ_k coeffs[k] z^{lowest + k}`, a finite Laurent polynomial.
    Polynomial { lowest: i32, coeffs: Vec<Complex64> },
    Family(FamilyMember),
    /// Maps applied in order: `maps[0]` first.
    Composition(Vec<ConformalMap>),
    NewtonInverse(ConformalMap),
    Riemann(Arc<DiskMap>),
    Flow(FlowMap),
    Custom(CustomMap),
}

/// An analytic map with derivative access and a domain of conformality.
#[derive(Clone)]
pub struct ConformalMap {
    kind: Arc<MapKind>,
    domain: DomainDescriptor,
}

impl fmt::Debug for ConformalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConformalMap({})", self.label())
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Radius factor for Cauchy extraction of higher derivatives.
pub(crate) const CAUCHY_RADIUS_FACTOR: f64 = 0.05;

impl ConformalMap {
    pub fn new(kind: MapKind, domain: DomainDescriptor) -> Self {
        ConformalMap { kind: Arc::new(kind), domain }
    }

    pub fn identity() -> Self {
        ConformalMap::new(MapKind::Identity, DomainDescriptor::Sphere)
    }

    pub fn mobius(m: Mobius) -> Self {
        ConformalMap::new(MapKind::Mobius(m), DomainDescriptor::Sphere)
    }

    /// Laurent polynomial `Σ coeffs[k] z^{lowest+k}`.
    pub fn polynomial(lowest: i32, coeffs: Vec<Complex64>, domain: DomainDescriptor) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidMap("empty coefficient list".into()));
        }
        if lowest < 0 && domain.contains(Complex64::new(0.0, 0.0)) {
            return Err(Error::InvalidMap("negative powers require a domain avoiding 0".into()));
        }
        Ok(ConformalMap::new(MapKind::Polynomial { lowest, coeffs }, domain))
    }

    /// `z ↦ z + Σ_{k≥2} c_k z^k` style perturbations given by `(power, coefficient)` pairs.
    pub fn perturbation(terms: &[(i32, Complex64)], domain: DomainDescriptor) -> Result<Self> {
        let lowest = terms.iter().map(|t| t.0).chain(std::iter::once(1)).min().unwrap();
        let highest = terms.iter().map(|t| t.0).chain(std::iter::once(1)).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (highest - lowest + 1) as usize];
        coeffs[(1 - lowest) as usize] += 1.0;
        for &(p, c) in terms {
            coeffs[(p - lowest) as usize] += c;
        }
        ConformalMap::polynomial(lowest, coeffs, domain)
    }

    pub fn custom<F>(label: &str, f: F, scale: f64, domain: DomainDescriptor) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        ConformalMap::new(
            MapKind::Custom(CustomMap { label: label.to_string(), f: Arc::new(f), df: None, scale }),
            domain,
        )
    }

    pub fn custom_with_derivative<F, D>(label: &str, f: F, df: D, scale: f64, domain: DomainDescriptor) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        D: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        ConformalMap::new(
            MapKind::Custom(CustomMap { label: label.to_string(), f: Arc::new(f), df: Some(Arc::new(df)), scale }),
            domain,
        )
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    pub fn with_domain(&self, domain: DomainDescriptor) -> Self {
        ConformalMap { kind: self.kind.clone(), domain }
    }

    pub fn label(&self) -> String {
        match &*self.kind {
            MapKind::Identity => "identity".into(),
            MapKind::Mobius(_) => "mobius".into(),
            MapKind::Polynomial { .. } => "polynomial-perturbation".into(),
            MapKind::Family(_) => "joukowsky-family-member".into(),
            MapKind::Composition(_) => "composition".into(),
            MapKind::NewtonInverse(_) => "newton-inverse".into(),
            MapKind::Riemann(_) => "riemann-map".into(),
            MapKind::Flow(_) => "flow".into(),
            MapKind::Custom(c) => format!("custom:{}", c.label),
        }
    }

    pub fn as_mobius(&self) -> Option<Mobius> {
        match &*self.kind {
            MapKind::Identity => Some(Mobius::identity()),
            MapKind::Mobius(m) => Some(*m),
            MapKind::Composition(maps) => {
                let mut acc = Mobius::identity();
                for m in maps {
                    acc = m.as_mobius()?.compose(&acc);
                }
                Some(acc)
            }
            MapKind::NewtonInverse(g) => g.as_mobius().map(|m| m.inverse()),
            _ => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match &*self.kind {
            MapKind::Identity => Ok(z),
            MapKind::Mobius(m) => Ok(m.eval(z)),
            MapKind::Polynomial { lowest, coeffs } => Ok(eval_laurent(*lowest, coeffs, z)),
            MapKind::Family(f) => f.eval(z),
            MapKind::Composition(maps) => {
                let mut w = z;
                for m in maps {
                    w = m.eval(w)?;
                }
                Ok(w)
            }
            MapKind::NewtonInverse(g) => newton_invert(g, z, g.inverse_guess(z)),
            MapKind::Riemann(d) => Ok(d.eval(z)),
            MapKind::Flow(f) => f.eval(z).map(|(g, _)| g),
            MapKind::Custom(c) => Ok((c.f)(z)),
        }
    }

    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        match &*self.kind {
            MapKind::Identity => Ok(one()),
            MapKind::Mobius(m) => Ok(m.deriv(z)),
            MapKind::Polynomial { lowest, coeffs } => Ok(eval_laurent_deriv(*lowest, coeffs, z)),
            MapKind::Family(f) => f.deriv(z),
            MapKind::Composition(maps) => {
                let mut w = z;
                let mut d = one();
                for m in maps {
                    d *= m.deriv(w)?;
                    w = m.eval(w)?;
                }
                Ok(d)
            }
            MapKind::NewtonInverse(g) => {
                let u = newton_invert(g, z, g.inverse_guess(z))?;
                let d = g.deriv(u)?;
                if d.norm() == 0.0 {
                    return Err(Error::DegenerateDerivative { at: u });
                }
                Ok(1.0 / d)
            }
            MapKind::Riemann(d) => Ok(d.deriv(z)),
            MapKind::Flow(f) => f.eval(z).map(|(_, d)| d),
            MapKind::Custom(c) => match &c.df {
                Some(df) => Ok(df(z)),
                None => self.contour_deriv(z),
            },
        }
    }

    /// Value and derivative in one call.
    pub fn eval_with_deriv(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        match &*self.kind {
            MapKind::Flow(f) => f.eval(z),
            MapKind::Composition(maps) => {
                let mut w = z;
                let mut d = one();
                for m in maps {
                    let (v, dv) = m.eval_with_deriv(w)?;
                    d *= dv;
                    w = v;
                }
                Ok((w, d))
            }
            MapKind::NewtonInverse(g) => {
                let u = newton_invert(g, z, g.inverse_guess(z))?;
                let d = g.deriv(u)?;
                if d.norm() == 0.0 {
                    return Err(Error::DegenerateDerivative { at: u });
                }
                Ok((u, 1.0 / d))
            }
            _ => Ok((self.eval(z)?, self.deriv(z)?)),
        }
    }

    /// Derivative of the evaluator by Cauchy extraction, independent of the
    /// derivative evaluator.
    pub fn contour_deriv(&self, z: Complex64) -> Result<Complex64> {
        let rho = 1e-2 * self.local_scale(z);
        let probe = self.eval(z)?;
        let vals = cauchy_derivatives(|u| self.eval(u).unwrap_or(Complex64::new(f64::NAN, f64::NAN)), z, rho, 1)?;
        if !probe.re.is_finite() {
            return Err(Error::ContourSingularity { at: z });
        }
        Ok(vals[1])
    }

    /// `g'(z), g''(z), g'''(z)` from the derivative evaluator plus Cauchy extraction.
    pub fn higher_derivs(&self, z: Complex64) -> Result<[Complex64; 3]> {
        let rho = CAUCHY_RADIUS_FACTOR * self.local_scale(z);
        let d1 = self.deriv(z)?;
        let vals = cauchy_derivatives(
            |u| self.deriv(u).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            z,
            rho,
            2,
        )?;
        Ok([d1, vals[1], vals[2]])
    }

    /// Length scale around `z` on which the map is analytic.
    pub fn local_scale(&self, z: Complex64) -> f64 {
        let s = match &*self.kind {
            MapKind::Identity => 1.0,
            MapKind::Mobius(m) => m.pole().map(|p| (z - p).norm()).unwrap_or(1.0),
            MapKind::Polynomial { lowest, coeffs } => {
                let mut s: f64 = 1.0;
                if *lowest < 0 {
                    s = s.min(z.norm());
                }
                // keep the extraction circle where the perturbation stays small
                let top = coeffs.last().map(|c| c.norm()).unwrap_or(0.0);
                let deg = *lowest + coeffs.len() as i32 - 1;
                if deg > 1 && top > 0.0 {
                    s = s.min(top.powf(-1.0 / (deg - 1) as f64));
                }
                s
            }
            MapKind::Family(f) => f.local_scale(z),
            MapKind::Composition(maps) => {
                let mut w = z;
                let mut d: f64 = 1.0;
                let mut s = f64::INFINITY;
                for m in maps {
                    s = s.min(m.local_scale(w) / d.max(1e-300));
                    match m.eval_with_deriv(w) {
                        Ok((v, dv)) => {
                            w = v;
                            d *= dv.norm();
                        }
                        Err(_) => break,
                    }
                }
                s
            }
            MapKind::NewtonInverse(g) => match newton_invert(g, z, g.inverse_guess(z)) {
                Ok(u) => g.local_scale(u) * g.deriv(u).map(|d| d.norm()).unwrap_or(1.0),
                Err(_) => 1.0,
            },
            MapKind::Riemann(d) => d.local_scale(z),
            MapKind::Flow(f) => f.local_scale(z),
            MapKind::Custom(c) => c.scale,
        };
        if s.is_finite() && s > 0.0 {
            s.min(1.0)
        } else {
            1.0
        }
    }

    /// Starting point for Newton inversion of this map at `w`.
    pub fn inverse_guess(&self, w: Complex64) -> Complex64 {
        match &*self.kind {
            MapKind::Mobius(m) => m.inverse().eval(w),
            MapKind::Riemann(d) => d.inverse_guess(w),
            MapKind::Polynomial { lowest, coeffs } if *lowest <= 0 && coeffs.len() as i32 > 1 - lowest => {
                let a0 = coeffs[(-lowest) as usize];
                let a1 = coeffs[(1 - lowest) as usize];
                if a1.norm() > 0.0 {
                    (w - a0) / a1
                } else {
                    w
                }
            }
            MapKind::Composition(maps) => {
                let mut u = w;
                for m in maps.iter().rev() {
                    u = m.inverse_guess(u);
                }
                u
            }
            MapKind::NewtonInverse(g) => g.eval(w).unwrap_or(w),
            _ => w,
        }
    }

    /// Inverse map; exact for Möbius kinds and compositions of invertible pieces.
    pub fn inverse(&self) -> ConformalMap {
        match &*self.kind {
            MapKind::Identity => self.clone(),
            MapKind::Mobius(m) => ConformalMap::mobius(m.inverse()),
            MapKind::Composition(maps) => ConformalMap::new(
                MapKind::Composition(maps.iter().rev().map(|m| m.inverse()).collect()),
                DomainDescriptor::MapImage { base: Box::new(self.domain.clone()), map: Box::new(self.clone()) },
            ),
            MapKind::NewtonInverse(g) => g.clone(),
            _ => ConformalMap::new(
                MapKind::NewtonInverse(self.clone()),
                DomainDescriptor::MapImage { base: Box::new(self.domain.clone()), map: Box::new(self.clone()) },
            ),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ConformalMap) -> ConformalMap {
        if let (Some(a), Some(b)) = (self.as_mobius_exact(), inner.as_mobius_exact()) {
            return ConformalMap::mobius(a.compose(&b)).with_domain(inner.domain.clone());
        }
        if matches!(&*self.kind, MapKind::Identity) {
            return inner.clone();
        }
        if matches!(&*inner.kind, MapKind::Identity) {
            return self.clone();
        }
        let mut maps = Vec::new();
        for m in [inner, self] {
            match &*m.kind {
                MapKind::Composition(ms) => maps.extend(ms.iter().cloned()),
                _ => maps.push(m.clone()),
            }
        }
        ConformalMap::new(MapKind::Composition(maps), inner.domain.clone())
    }

    fn as_mobius_exact(&self) -> Option<Mobius> {
        match &*self.kind {
            MapKind::Identity => Some(Mobius::identity()),
            MapKind::Mobius(m) => Some(*m),
            _ => None,
        }
    }

    /// Largest discrepancy between the derivative evaluator and a contour
    /// derivative of the evaluator over the probe points.
    pub fn derivative_consistency(&self, probe: &[Complex64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in probe {
            let exact = self.deriv(z)?;
            let numeric = self.contour_deriv(z)?;
            worst = worst.max((exact - numeric).norm() / exact.norm().max(1.0));
        }
        Ok(worst)
    }
}

pub(crate) fn eval_laurent(lowest: i32, coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc * z.powi(lowest)
}

pub(crate) fn eval_laurent_deriv(lowest: i32, coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate().rev() {
        acc = acc * z + c * (lowest + k as i32) as f64;
    }
    acc * z.powi(lowest - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn polynomial_derivatives_match_contour() {
        let g = ConformalMap::perturbation(&[(2, c(0.1, 0.0)), (-1, c(0.01, 0.0))], DomainDescriptor::annulus(0.5, 1.5).unwrap())
            .unwrap();
        let probe: Vec<Complex64> = (0..16).map(|k| Complex64::from_polar(1.0, k as f64 * 0.4)).collect();
        assert!(g.derivative_consistency(&probe).unwrap() < 1e-9);
        let z = c(0.7, 0.2);
        let want = z + 0.1 * z * z + 0.01 / z;
        assert!((g.eval(z).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn composition_chain_rule() {
        let m = ConformalMap::mobius(Mobius::new(c(1.0, 0.0), c(0.1, 0.0), c(0.2, 0.1), c(1.0, 0.0)).unwrap());
        let p = ConformalMap::perturbation(&[(2, c(0.05, 0.02))], DomainDescriptor::UnitDisk).unwrap();
        let g = m.compose(&p);
        let z = c(0.2, -0.3);
        let want = m.deriv(p.eval(z).unwrap()).unwrap() * p.deriv(z).unwrap();
        assert!((g.deriv(z).unwrap() - want).norm() < 1e-14);
        let inv = g.inverse();
        let w = g.eval(z).unwrap();
        assert!((inv.eval(w).unwrap() - z).norm() < 1e-12);
        assert!(g.derivative_consistency(&[z, c(0.1, 0.1)]).unwrap() < 1e-9);
    }

    #[test]
    fn mobius_compositions_collapse() {
        let a = ConformalMap::mobius(Mobius::translation(c(1.0, 0.0)));
        let b = ConformalMap::mobius(Mobius::inversion());
        assert!(a.compose(&b).as_mobius().is_some());
        assert_eq!(a.compose(&b).label(), "mobius");
    }
}
