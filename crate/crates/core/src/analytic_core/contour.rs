//! Trapezoidal quadrature on circles with the normalised measure `∮ dz/z = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default number of quadrature nodes.
pub const DEFAULT_NODES: usize = 256;

/// Traversal direction of a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// A circle sampled at `nodes` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleContour {
    pub center: Complex64,
    pub radius: f64,
    pub orientation: Orientation,
    pub nodes: usize,
}

impl CircleContour {
    /// Positively oriented circle with the default node count.
    pub fn new(center: Complex64, radius: f64) -> Self {
        CircleContour {
            center,
            radius,
            orientation: Orientation::Positive,
            nodes: DEFAULT_NODES,
        }
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 16 || self.nodes % 2 != 0 {
            return Err(Error::InvalidContour(format!(
                "node count must be even and at least 16, got {}",
                self.nodes
            )));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidContour(format!("radius {} must be positive", self.radius)));
        }
        if !(self.center.re.is_finite() && self.center.im.is_finite()) {
            return Err(Error::InvalidContour("center must be finite".into()));
        }
        Ok(())
    }

    /// Unit direction of node `k`, i.e. `exp(2πik/M)`.
    pub fn direction(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 / self.nodes as f64)
    }

    pub fn node(&self, k: usize) -> Complex64 {
        self.center + self.radius * self.direction(k)
    }

    pub fn points(&self) -> Vec<Complex64> {
        (0..self.nodes).map(|k| self.node(k)).collect()
    }
}

/// `(1/2πi) ∮ f(z) dz` over the contour, by the trapezoidal rule.
///
/// With this normalisation `∮ dz/(z - c) = 1` on a positive circle around `c`.
pub fn contour_integral<F>(f: F, contour: &CircleContour) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    contour.validate()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..contour.nodes {
        let z = contour.node(k);
        let v = f(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourSingularity { at: z });
        }
        acc += v * (z - contour.center);
    }
    Ok(acc * (contour.orientation.sign() / contour.nodes as f64))
}

/// Fallible variant of [`contour_integral`]; the first error aborts the sum.
pub fn try_contour_integral<F>(f: F, contour: &CircleContour) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    contour.validate()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..contour.nodes {
        let z = contour.node(k);
        let v = f(z)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourSingularity { at: z });
        }
        acc += v * (z - contour.center);
    }
    Ok(acc * (contour.orientation.sign() / contour.nodes as f64))
}

/// Laurent coefficients `a_n = ∮ f(z) (z-c)^{-n-1} dz` for `n` in `n_min..=n_max`.
///
/// The circle is always traversed positively here, so the coefficients do
/// not depend on the orientation flag.
pub fn laurent_coeffs<F>(f: F, contour: &CircleContour, n_min: i32, n_max: i32) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    contour.validate()?;
    let m = contour.nodes;
    let mut samples = Vec::with_capacity(m);
    for k in 0..m {
        let z = contour.node(k);
        let v = f(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ContourSingularity { at: z });
        }
        samples.push(v);
    }
    Ok(coefficients_from_samples(&samples, contour.radius, n_min, n_max))
}

/// Laurent coefficients from samples `v_k = f(c + r e^{2πik/M})`.
pub fn coefficients_from_samples(samples: &[Complex64], radius: f64, n_min: i32, n_max: i32) -> Vec<Complex64> {
    let m = samples.len();
    let roots: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / m as f64))
        .collect();
    (n_min..=n_max)
        .map(|n| {
            let step = n.rem_euclid(m as i32) as usize;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0usize;
            for v in samples {
                acc += v * roots[idx];
                idx = (idx + step) % m;
            }
            acc / m as f64 * radius.powi(-n)
        })
        .collect()
}

/// Taylor data `f(z0), f'(z0), ..., f^{(order)}(z0)` by Cauchy extraction on
/// a circle of the given radius.
pub fn cauchy_derivatives<F>(f: F, z0: Complex64, radius: f64, order: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    let contour = CircleContour::new(z0, radius).with_nodes(64);
    let coeffs = laurent_coeffs(f, &contour, 0, order as i32)?;
    let mut fact = 1.0;
    Ok(coeffs
        .into_iter()
        .enumerate()
        .map(|(k, a)| {
            if k > 0 {
                fact *= k as f64;
            }
            a * fact
        })
        .collect())
}
