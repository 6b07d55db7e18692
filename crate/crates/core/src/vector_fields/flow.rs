use num_complex::Complex64;

use super::field::VectorField;
use crate::analytic_core::{ConformalMap, DomainDescriptor, MapKind, Mobius};
use crate::error::{Error, Result};

/// Base number of RK4 steps; one Richardson halving doubles it.
pub const RK4_STEPS: usize = 64;
/// Relative margin kept between the flowed probe circles and the boundary.
pub const DOMAIN_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowMethod {
    ClosedForm,
    Rk4,
}

/// Method selection for [`exp_flow_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowStrategy {
    Auto,
    Force(FlowMethod),
}

/// Time-`t` flow of a field integrated by RK4, carrying the variational
/// equation for `∂g_t`.
#[derive(Debug, Clone)]
pub struct FlowMap {
    pub field: VectorField,
    pub t: f64,
    pub steps: usize,
}

impl FlowMap {
    fn integrate(&self, z: Complex64, steps: usize) -> Result<(Complex64, Complex64)> {
        let dt = self.t / steps as f64;
        let rhs = |g: Complex64, j: Complex64| -> Result<(Complex64, Complex64)> {
            Ok((self.field.eval(g)?, self.field.deriv(g)? * j))
        };
        let mut g = z;
        let mut j = Complex64::new(1.0, 0.0);
        for k in 0..steps {
            let step = || -> Result<(Complex64, Complex64)> {
                let (k1g, k1j) = rhs(g, j)?;
                let (k2g, k2j) = rhs(g + 0.5 * dt * k1g, j + 0.5 * dt * k1j)?;
                let (k3g, k3j) = rhs(g + 0.5 * dt * k2g, j + 0.5 * dt * k2j)?;
                let (k4g, k4j) = rhs(g + dt * k3g, j + dt * k3j)?;
                Ok((
                    g + dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g),
                    j + dt / 6.0 * (k1j + 2.0 * k2j + 2.0 * k3j + k4j),
                ))
            };
            match step() {
                Ok((ng, nj)) if ng.re.is_finite() && ng.im.is_finite() => {
                    g = ng;
                    j = nj;
                }
                _ => return Err(Error::HorizonExceeded { max_t: k as f64 * dt }),
            }
        }
        Ok((g, j))
    }

    /// `(g_t(z), ∂g_t(z))`, Richardson-combined from `steps` and `2·steps`.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (g1, j1) = self.integrate(z, self.steps)?;
        let (g2, j2) = self.integrate(z, 2 * self.steps)?;
        Ok(((16.0 * g2 - g1) / 15.0, (16.0 * j2 - j1) / 15.0))
    }

    pub fn local_scale(&self, z: Complex64) -> f64 {
        self.field.local_scale(z)
    }
}

/// Result of [`exp_flow`].
#[derive(Debug, Clone)]
pub struct FlowResult {
    pub map: ConformalMap,
    /// Region `A_t` on which the flow was verified to stay inside the field's domain.
    pub shrunk_domain: DomainDescriptor,
    pub method: FlowMethod,
    /// RK4 steps of the finer pass (0 for closed forms).
    pub steps: usize,
}

impl FlowResult {
    /// Largest `|h(g_t(z)) - h(z) ∂g_t(z)|` over the probe grid of the shrunk domain.
    pub fn commutation_residual(&self, h: &VectorField) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for z in self.shrunk_domain.probe_grid() {
            let (g, dg) = self.map.eval_with_deriv(z)?;
            worst = worst.max((h.eval(g)? - h.eval(z)? * dg).norm());
        }
        Ok(worst)
    }
}

/// Möbius flow of the global field `a + bz + cz²`, i.e. `exp(tM)` with
/// `M = [[b/2, a], [-c, -b/2]]`.
pub fn quadratic_flow(a: Complex64, b: Complex64, c: Complex64, t: f64) -> Mobius {
    let half = 0.5 * b;
    let lambda = (half * half - a * c).sqrt();
    let x = lambda * t;
    let cosh = x.cosh();
    let sinhc = if x.norm() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    };
    let s = sinhc * t;
    Mobius { a: cosh + s * half, b: s * a, c: -s * c, d: cosh - s * half }
}

pub fn exp_flow(h: &VectorField, t: f64) -> Result<FlowResult> {
    exp_flow_with(h, t, FlowStrategy::Auto)
}

/// Time-`t` flow `g_t` of `h` from the identity.
pub fn exp_flow_with(h: &VectorField, t: f64, strategy: FlowStrategy) -> Result<FlowResult> {
    let closed = h.as_quadratic();
    let method = match strategy {
        FlowStrategy::Force(FlowMethod::ClosedForm) if closed.is_none() => {
            return Err(Error::Unsupported(format!("no closed-form flow for {}", h.label())))
        }
        FlowStrategy::Force(m) => m,
        FlowStrategy::Auto => {
            if closed.is_some() {
                FlowMethod::ClosedForm
            } else {
                FlowMethod::Rk4
            }
        }
    };
    let build = |tt: f64| -> ConformalMap {
        match (method, closed) {
            (FlowMethod::ClosedForm, Some((a, b, c))) => {
                ConformalMap::mobius(quadratic_flow(a, b, c, tt)).with_domain(h.domain().clone())
            }
            _ => ConformalMap::new(
                MapKind::Flow(FlowMap { field: h.clone(), t: tt, steps: RK4_STEPS }),
                h.domain().clone(),
            ),
        }
    };
    let map = build(t);
    let steps = if method == FlowMethod::Rk4 { 2 * RK4_STEPS } else { 0 };
    let shrunk_domain = match h.domain().as_disk() {
        Some((center, radius)) => {
            let stays = |g: &ConformalMap, r: f64| -> bool {
                rings(center, r).into_iter().all(|z| match g.eval(z) {
                    Ok(v) => v.re.is_finite() && (v - center).norm() <= (1.0 - DOMAIN_MARGIN) * radius,
                    Err(_) => false,
                })
            };
            let mut r = (1.0 - DOMAIN_MARGIN) * radius;
            while !stays(&map, r) {
                r *= 0.9;
                if r < 1e-3 * radius {
                    let r_min = r;
                    let (mut lo, mut hi) = (0.0, t);
                    for _ in 0..40 {
                        let mid = 0.5 * (lo + hi);
                        if stays(&build(mid), r_min) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    return Err(Error::HorizonExceeded { max_t: lo });
                }
            }
            DomainDescriptor::disk(center, r)?
        }
        None => {
            let domain = h.domain().clone();
            for z in domain.probe_grid() {
                match map.eval(z) {
                    Ok(v) if domain.contains(v) => {}
                    _ => return Err(Error::HorizonExceeded { max_t: 0.0 }),
                }
            }
            domain
        }
    };
    Ok(FlowResult { map: map.with_domain(shrunk_domain.clone()), shrunk_domain, method, steps })
}

/// Probe circles of radius `r` and `r/2`, 32 points each.
fn rings(center: Complex64, r: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(64);
    for (i, rr) in [r, 0.5 * r].into_iter().enumerate() {
        for k in 0..32 {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5 * i as f64) / 32.0;
            out.push(center + Complex64::from_polar(rr, th));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero() -> Complex64 {
        c(0.0, 0.0)
    }

    #[test]
    fn closed_forms() {
        let one = VectorField::constant(c(1.0, 0.0), DomainDescriptor::Sphere);
        let f = exp_flow(&one, 0.3).unwrap();
        assert_eq!(f.method, FlowMethod::ClosedForm);
        let z = c(0.2, 0.1);
        assert!((f.map.eval(z).unwrap() - (z + 0.3)).norm() < 1e-15);

        let lin = VectorField::quadratic(zero(), c(1.0, 0.0), zero(), DomainDescriptor::Sphere);
        let f = exp_flow(&lin, 0.3).unwrap();
        assert!((f.map.eval(z).unwrap() - z * 0.3f64.exp()).norm() < 1e-14);

        let sq = VectorField::quadratic(zero(), zero(), c(1.0, 0.0), DomainDescriptor::UnitDisk);
        let f = exp_flow(&sq, 0.1).unwrap();
        assert!((f.map.eval(z).unwrap() - z / (1.0 - 0.1 * z)).norm() < 1e-15);
    }

    #[test]
    fn rk4_matches_closed_form() {
        let sq = VectorField::quadratic(zero(), zero(), c(1.0, 0.0), DomainDescriptor::UnitDisk);
        let f = exp_flow_with(&sq, 0.1, FlowStrategy::Force(FlowMethod::Rk4)).unwrap();
        for k in 0..32 {
            let z = Complex64::from_polar(0.5, k as f64 * 0.2);
            assert!((f.map.eval(z).unwrap() - z / (1.0 - 0.1 * z)).norm() < 1e-10);
        }
        assert!(f.commutation_residual(&sq).unwrap() < 1e-8);
    }

    #[test]
    fn horizon() {
        let one = VectorField::constant(c(1.0, 0.0), DomainDescriptor::UnitDisk);
        match exp_flow(&one, 5.0) {
            Err(Error::HorizonExceeded { max_t }) => assert!(max_t > 0.9 && max_t < 0.95, "{max_t}"),
            other => panic!("{other:?}"),
        }
    }
}
