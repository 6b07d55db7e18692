use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::curve::{BoundaryCurve, MAX_MODES, TAIL_TOL};
use crate::analytic_core::{ConformalMap, DomainDescriptor, MapKind};
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;
pub const UPDATE_TOL: f64 = 1e-12;

/// `F(z) = c + z·exp(A(z))` with `A(z) = Σ_{n≥0} a_n z^n`, mapping 𝔻 onto
/// the interior of a curve and fixing `F(0) = c`, `F'(0) > 0`.
#[derive(Debug, Clone)]
pub struct DiskMap {
    pub center: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl DiskMap {
    fn series(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut a = Complex64::new(0.0, 0.0);
        let mut da = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            da = da * z + a;
            a = a * z + c;
        }
        (a, da)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (a, _) = self.series(z);
        self.center + z * a.exp()
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let (a, da) = self.series(z);
        a.exp() * (1.0 + z * da)
    }

    /// Conformal radius `F'(0)`.
    pub fn conformal_radius(&self) -> f64 {
        self.coeffs[0].exp().re
    }

    pub fn local_scale(&self, z: Complex64) -> f64 {
        (1.0 - z.norm()).clamp(1e-6, 1.0)
    }

    pub fn inverse_guess(&self, w: Complex64) -> Complex64 {
        (w - self.center) / self.coeffs[0].exp()
    }
}

#[derive(Debug, Clone)]
pub struct RiemannMapResult {
    /// Conformal map on the unit disk.
    pub map: ConformalMap,
    pub disk: DiskMap,
    pub iterations: usize,
    /// Largest distance from `F(e^{it})` to the curve at the midpoints
    /// between collocation nodes.
    pub boundary_residual: f64,
}

/// Riemann map of the unit disk onto the interior of `curve` by
/// Theodorsen iteration, doubling the collocation count until the tail of
/// the Taylor coefficients is negligible.
pub fn solve_disk_map(curve: &BoundaryCurve) -> Result<RiemannMapResult> {
    solve_disk_map_at(curve, curve.center())
}

/// As [`solve_disk_map`] with the normalisation `F(0) = center`.
pub fn solve_disk_map_at(curve: &BoundaryCurve, center: Complex64) -> Result<RiemannMapResult> {
    curve.validate()?;
    let mut m = (2 * curve.modes()).max(64);
    loop {
        let (disk, iterations) = theodorsen(curve, center, m)?;
        let scale = disk.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let tail = disk.coeffs[m / 4..].iter().map(|c| c.norm()).fold(0.0, f64::max);
        if tail <= TAIL_TOL * scale || m >= 2 * MAX_MODES {
            let boundary_residual = boundary_residual(curve, &disk, m)?;
            let arc = std::sync::Arc::new(disk.clone());
            let map = ConformalMap::new(MapKind::Riemann(arc), DomainDescriptor::UnitDisk);
            return Ok(RiemannMapResult { map, disk, iterations, boundary_residual });
        }
        m *= 2;
    }
}

struct ArgFn<'a> {
    curve: &'a BoundaryCurve,
    c: Complex64,
    beta: f64,
}

impl ArgFn<'_> {
    /// Continuous branch of `arg(γ(φ) - c)` with its derivative.
    fn eval(&self, phi: f64) -> (f64, f64) {
        let (g, dg) = self.curve.eval_with_deriv(phi);
        let rel = g - self.c;
        let base = phi + self.beta;
        let val = base + (rel * Complex64::from_polar(1.0, -base)).arg();
        (val, (dg / rel).im)
    }

    fn solve(&self, target: f64, mut phi: f64) -> Result<f64> {
        for _ in 0..60 {
            let (v, d) = self.eval(phi);
            if !(d > 0.0) {
                return Err(Error::InvalidCurve(format!("curve is not star-shaped about its center near φ = {phi:.4}")));
            }
            let step = (v - target) / d;
            phi -= step.clamp(-0.5, 0.5);
            if step.abs() < 1e-15 {
                return Ok(phi);
            }
        }
        Ok(phi)
    }
}

/// Harmonic conjugate on equispaced samples via `-i·sgn(n)`.
fn conjugate(u: &[f64]) -> (Vec<Complex64>, Vec<f64>) {
    let m = u.len();
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    planner.plan_fft_forward(m).process(&mut buf);
    for b in buf.iter_mut() {
        *b /= m as f64;
    }
    let hat = buf.clone();
    for (k, b) in buf.iter_mut().enumerate() {
        let factor = if k == 0 || 2 * k == m {
            Complex64::new(0.0, 0.0)
        } else if 2 * k < m {
            Complex64::new(0.0, -1.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        *b *= factor;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    (hat, buf.iter().map(|v| v.re).collect())
}

fn theodorsen(curve: &BoundaryCurve, c: Complex64, m: usize) -> Result<(DiskMap, usize)> {
    let beta = (curve.eval(0.0) - c).arg();
    let af = ArgFn { curve, c, beta };
    let nodes: Vec<f64> = (0..m).map(|k| 2.0 * PI * k as f64 / m as f64).collect();
    let mut phi = Vec::with_capacity(m);
    for &t in &nodes {
        phi.push(af.solve(t, t - beta)?);
    }
    let log_mod = |phi: &[f64]| -> Vec<f64> { phi.iter().map(|&p| (curve.eval(p) - c).norm().ln()).collect() };
    let mut last = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let (_, v) = conjugate(&log_mod(&phi));
        let mut update: f64 = 0.0;
        for k in 0..m {
            let next = af.solve(nodes[k] + v[k], phi[k])?;
            update = update.max((next - phi[k]).abs());
            phi[k] = next;
        }
        last = update;
        if update < UPDATE_TOL {
            let (hat, _) = conjugate(&log_mod(&phi));
            let mut coeffs = Vec::with_capacity(m / 2);
            coeffs.push(hat[0]);
            for h in &hat[1..m / 2] {
                coeffs.push(2.0 * h);
            }
            // F'(0) real and positive: A(0) = a_0 already real, and the
            // rotation of the parameter is absorbed into φ
            return Ok((DiskMap { center: c, coeffs }, it));
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, last: Complex64::new(last, 0.0), residual: last })
}

fn boundary_residual(curve: &BoundaryCurve, disk: &DiskMap, m: usize) -> Result<f64> {
    let c = disk.center;
    let beta = (curve.eval(0.0) - c).arg();
    let af = ArgFn { curve, c, beta };
    let mut worst: f64 = 0.0;
    let mut guess = 0.0;
    for k in 0..m {
        let t = 2.0 * PI * (k as f64 + 0.5) / m as f64;
        let zeta = Complex64::from_polar(1.0, t);
        let w = disk.eval(zeta);
        let (a, _) = disk.series(zeta);
        let target = t + a.im;
        if k == 0 {
            guess = target - beta;
        }
        let phi = af.solve(target, guess)?;
        guess = phi + 2.0 * PI / m as f64;
        worst = worst.max((w - curve.eval(phi)).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_gives_affine_map() {
        let curve = BoundaryCurve::circle(Complex64::new(0.5, -0.25), 2.0).unwrap();
        let r = solve_disk_map(&curve).unwrap();
        assert!((r.disk.conformal_radius() - 2.0).abs() < 1e-13);
        let z = Complex64::new(0.3, 0.2);
        assert!((r.disk.eval(z) - (Complex64::new(0.5, -0.25) + 2.0 * z)).norm() < 1e-13);
        assert!(r.boundary_residual < 1e-13);
    }

    #[test]
    fn ellipse_boundary_and_conformal_radius() {
        // image of the circle under z + 0.1 z², whose Riemann map is known
        let curve = BoundaryCurve::from_fn(|t| {
            let e = Complex64::from_polar(1.0, t);
            e + 0.1 * e * e
        })
        .unwrap();
        let r = solve_disk_map(&curve).unwrap();
        assert!(r.boundary_residual < 1e-12, "{}", r.boundary_residual);
        let z = Complex64::new(0.2, -0.4);
        assert!((r.disk.eval(z) - (z + 0.1 * z * z)).norm() < 1e-12);
        assert!((r.disk.deriv(z) - (1.0 + 0.2 * z)).norm() < 1e-12);
    }
}
