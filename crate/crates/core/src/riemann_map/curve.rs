use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Default Fourier truncation.
pub const DEFAULT_MODES: usize = 128;
/// Largest truncation reached by automatic doubling.
pub const MAX_MODES: usize = 4096;
/// Coefficients beyond half the truncation must fall below this (relative).
pub const TAIL_TOL: f64 = 1e-13;
/// Allowed relative deviation from the mean circle.
pub const MAX_DEVIATION: f64 = 0.3;

/// Closed analytic curve `γ(φ) = Σ_{|n|≤N} c_n e^{inφ}`.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    /// `coeffs[k]` multiplies `e^{i(k-N)φ}`.
    coeffs: Vec<Complex64>,
    modes: usize,
    center: Complex64,
    mean_radius: f64,
}

impl BoundaryCurve {
    /// Build from coefficients `c_{-N}..=c_N`.
    pub fn from_coefficients(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 != 1 || coeffs.len() < 3 {
            return Err(Error::InvalidCurve("need an odd number (2N+1) of coefficients".into()));
        }
        let modes = coeffs.len() / 2;
        let mut curve = BoundaryCurve { coeffs, modes, center: Complex64::new(0.0, 0.0), mean_radius: 0.0 };
        curve.center = curve.coeffs[modes];
        let samples = curve.sample(256);
        curve.mean_radius = samples.iter().map(|z| (z - curve.center).norm()).sum::<f64>() / samples.len() as f64;
        if !(curve.mean_radius > 0.0) {
            return Err(Error::InvalidCurve("degenerate curve".into()));
        }
        Ok(curve)
    }

    /// Sample `f` and keep doubling the truncation until the upper half of
    /// the spectrum is negligible.
    pub fn from_fn<F>(f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        Self::from_fn_with_modes(f, DEFAULT_MODES)
    }

    pub fn from_fn_with_modes<F>(f: F, modes: usize) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let mut n = modes.max(8);
        loop {
            let coeffs = sample_coefficients(&f, n)?;
            let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let tail = coeffs
                .iter()
                .enumerate()
                .filter(|(k, _)| (*k as i64 - n as i64).unsigned_abs() as usize > n / 2)
                .map(|(_, c)| c.norm())
                .fold(0.0, f64::max);
            if tail <= TAIL_TOL * scale || n >= MAX_MODES {
                return BoundaryCurve::from_coefficients(coeffs);
            }
            n *= 2;
        }
    }

    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * DEFAULT_MODES + 1];
        coeffs[DEFAULT_MODES] = center;
        coeffs[DEFAULT_MODES + 1] = Complex64::new(radius, 0.0);
        BoundaryCurve::from_coefficients(coeffs)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn mean_radius(&self) -> f64 {
        self.mean_radius
    }

    pub fn eval(&self, phi: f64) -> Complex64 {
        self.eval_with_deriv(phi).0
    }

    /// `(γ(φ), γ'(φ))`.
    pub fn eval_with_deriv(&self, phi: f64) -> (Complex64, Complex64) {
        let n = self.modes;
        let e = Complex64::from_polar(1.0, phi);
        let ei = e.conj();
        let mut val = self.coeffs[n];
        let mut der = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        let mut q = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        for k in 1..=n {
            p *= e;
            q *= ei;
            let cp = self.coeffs[n + k] * p;
            let cm = self.coeffs[n - k] * q;
            val += cp + cm;
            der += i * (k as f64) * (cp - cm);
        }
        (val, der)
    }

    pub fn sample(&self, m: usize) -> Vec<Complex64> {
        (0..m).map(|k| self.eval(2.0 * PI * k as f64 / m as f64)).collect()
    }

    /// Largest `||γ - c| - r̄| / r̄` over a sampling.
    pub fn relative_deviation(&self) -> f64 {
        self.sample(512)
            .iter()
            .map(|z| ((z - self.center).norm() - self.mean_radius).abs() / self.mean_radius)
            .fold(0.0, f64::max)
    }

    /// Jordan property on 512 samples and the near-circularity bound.
    pub fn validate(&self) -> Result<()> {
        let dev = self.relative_deviation();
        if dev > MAX_DEVIATION {
            return Err(Error::InvalidCurve(format!(
                "relative deviation {dev:.3} from the mean circle exceeds {MAX_DEVIATION}"
            )));
        }
        let pts = self.sample(512);
        if !winding_is_monotone(&pts, self.center) && has_self_intersection(&pts) {
            return Err(Error::InvalidCurve("curve self-intersects".into()));
        }
        Ok(())
    }
}

fn sample_coefficients<F>(f: &F, modes: usize) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    let m = 2 * modes;
    // shifted nodes avoid φ = 0, where Cayley parametrisations sit at ∞
    let mut buf: Vec<Complex64> = (0..m)
        .map(|k| f(2.0 * PI * (k as f64 + 0.5) / m as f64))
        .collect();
    if let Some(bad) = buf.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::InvalidCurve(format!("non-finite curve sample at node {bad}")));
    }
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * modes + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let n = k as i64 - modes as i64;
        if n.unsigned_abs() as usize == modes {
            continue;
        }
        let idx = n.rem_euclid(m as i64) as usize;
        let shift = Complex64::from_polar(1.0, -PI * n as f64 / m as f64);
        *c = buf[idx] * shift / m as f64;
    }
    Ok(coeffs)
}

fn winding_is_monotone(pts: &[Complex64], center: Complex64) -> bool {
    let n = pts.len();
    let mut total = 0.0;
    for k in 0..n {
        let a = pts[k] - center;
        let b = pts[(k + 1) % n] - center;
        let d = (b / a).arg();
        if d <= 0.0 {
            return false;
        }
        total += d;
    }
    (total - 2.0 * PI).abs() < 1e-6
}

fn has_self_intersection(pts: &[Complex64]) -> bool {
    let n = pts.len();
    let cross = |o: Complex64, a: Complex64, b: Complex64| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    for i in 0..n {
        let (p1, p2) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (q1, q2) = (pts[j], pts[(j + 1) % n]);
            let d1 = cross(q1, q2, p1);
            let d2 = cross(q1, q2, p2);
            let d3 = cross(p1, p2, q1);
            let d4 = cross(p1, p2, q2);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_ellipse_round_trips() {
        let e = |t: f64| Complex64::new(t.cos(), 1.1 * t.sin());
        let curve = BoundaryCurve::from_fn(e).unwrap();
        for k in 0..17 {
            let t = 0.37 * k as f64;
            assert!((curve.eval(t) - e(t)).norm() < 1e-14);
        }
        assert!(curve.center().norm() < 1e-15);
        curve.validate().unwrap();
    }

    #[test]
    fn rejects_figure_eight_and_large_deviation() {
        let eight = BoundaryCurve::from_fn(|t| Complex64::new((t).sin(), (2.0 * t).sin() * 0.5) + 0.0).unwrap();
        assert!(eight.validate().is_err());
        let flat = BoundaryCurve::from_fn(|t| Complex64::new(t.cos(), 0.4 * t.sin())).unwrap();
        assert!(flat.validate().is_err());
    }
}
