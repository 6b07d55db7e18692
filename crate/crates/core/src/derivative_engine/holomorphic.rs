use std::f64::consts::PI;

use num_complex::Complex64;

use super::configuration::{Configuration, Part};
use super::directional::{
    admissible_step, directional_derivative, directional_derivative_at_step, step_size, Derivative, DerivativeOptions,
};
use super::functional::Functional;
use crate::analytic_core::DomainDescriptor;
use crate::error::{Error, Result};
use crate::vector_fields::{basis_h, special_field_hw_in, Anchor, Sign, VectorField};

/// Differentiability domain family the derivative was taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// `Ĉ_w`, the sphere minus a small disk around `w`.
    Punctured,
    /// A disk `r𝔻` containing the marked points, anchor at ∞.
    Disk,
    /// The exterior of a disk, anchor at 0.
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoloDerivative {
    pub value: Complex64,
    pub error: f64,
    pub eta: f64,
    pub sector: Sector,
}

impl HoloDerivative {
    pub fn within(&self, tol: f64) -> bool {
        self.error <= tol
    }
}

/// Radius of the disk around `w` removed from the domain of `h^{(w)}`.
fn exclusion_radius(sigma: &Configuration, w: Complex64, opts: &DerivativeOptions) -> Result<f64> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::InvalidConfiguration("w must be finite".into()));
    }
    if let Some(r) = opts.exclusion {
        return Ok(r);
    }
    let mut d = sigma.points().iter().map(|z| (z - w).norm()).fold(1.0, f64::min);
    if sigma.has_boundary() {
        if let Some(b) = sigma.boundary_distance(w) {
            if matches!(opts.part, Part::All | Part::Boundary) {
                d = d.min(b);
            }
        }
    }
    if !(d > 0.0) {
        return Err(Error::SingularConfiguration(format!("w = {w} coincides with a marked point or the boundary")));
    }
    Ok(0.25 * d)
}

/// Common step and `h^{(w)}` family for the point derivatives at `w`.
fn point_setup(sigma: &Configuration, w: Complex64, opts: &DerivativeOptions) -> Result<(f64, f64, Anchor)> {
    let radius = exclusion_radius(sigma, w, opts)?;
    let anchor = opts.anchor.unwrap_or(Anchor::Finite(w));
    let h0 = special_field_hw_in(w, 0.0, radius)?;
    let mut eta = opts.eta.unwrap_or_else(|| step_size(sigma, &h0, opts));
    for theta in [0.25 * PI, -0.25 * PI] {
        eta = admissible_step(&special_field_hw_in(w, theta, radius)?, anchor, eta)?;
    }
    Ok((radius, eta, anchor))
}

/// `∇_{e^{iθ} h^{(w)}} f(Σ)` at a given step.
fn rotated(f: &dyn Functional, sigma: &Configuration, w: Complex64, theta: f64, setup: (f64, f64, Anchor), part: Part) -> Result<Derivative> {
    let (radius, eta, anchor) = setup;
    let h = special_field_hw_in(w, theta, radius)?;
    directional_derivative_at_step(f, sigma, &h, anchor, eta, part)
}

/// `Δ_w f(Σ) = ½ Σ_± e^{∓iπ/4} ∇_{e^{±iπ/4} h^{(w)}} f(Σ)`.
pub fn holo_derivative_point(f: &dyn Functional, sigma: &Configuration, w: Complex64) -> Result<HoloDerivative> {
    holo_derivative_point_with(f, sigma, w, &DerivativeOptions::default())
}

pub fn holo_derivative_point_with(
    f: &dyn Functional,
    sigma: &Configuration,
    w: Complex64,
    opts: &DerivativeOptions,
) -> Result<HoloDerivative> {
    let setup = point_setup(sigma, w, opts)?;
    let plus = rotated(f, sigma, w, 0.25 * PI, setup, opts.part)?;
    let minus = rotated(f, sigma, w, -0.25 * PI, setup, opts.part)?;
    let e = Complex64::from_polar(1.0, -0.25 * PI);
    Ok(HoloDerivative {
        value: 0.5 * (e * plus.value + e.conj() * minus.value),
        error: 0.5 * (plus.error + minus.error),
        eta: setup.1,
        sector: Sector::Punctured,
    })
}

/// `(1/2π) ∫ e^{-iθ} ∇_{e^{iθ} h^{(w)}} f dθ` by the trapezoidal rule.
pub fn holo_derivative_point_theta(
    f: &dyn Functional,
    sigma: &Configuration,
    w: Complex64,
    nodes: usize,
    opts: &DerivativeOptions,
) -> Result<HoloDerivative> {
    if nodes < 4 {
        return Err(Error::InvalidContour(format!("need at least 4 angular nodes, got {nodes}")));
    }
    let setup = point_setup(sigma, w, opts)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err: f64 = 0.0;
    for k in 0..nodes {
        let theta = 2.0 * PI * k as f64 / nodes as f64;
        let d = rotated(f, sigma, w, theta, setup, opts.part)?;
        acc += Complex64::from_polar(1.0, -theta) * d.value;
        err = err.max(d.error);
    }
    Ok(HoloDerivative { value: acc / nodes as f64, error: err, eta: setup.1, sector: Sector::Punctured })
}

/// `Δ̄ = ∇_{h^{(w)}} f(Σ) - Δ_w f(Σ)`.
pub fn antiholo_derivative_point(f: &dyn Functional, sigma: &Configuration, w: Complex64) -> Result<HoloDerivative> {
    antiholo_derivative_point_with(f, sigma, w, &DerivativeOptions::default())
}

pub fn antiholo_derivative_point_with(
    f: &dyn Functional,
    sigma: &Configuration,
    w: Complex64,
    opts: &DerivativeOptions,
) -> Result<HoloDerivative> {
    let setup = point_setup(sigma, w, opts)?;
    let plain = rotated(f, sigma, w, 0.0, setup, opts.part)?;
    let holo = holo_derivative_point_with(f, sigma, w, &DerivativeOptions { eta: Some(setup.1), ..*opts })?;
    Ok(HoloDerivative {
        value: plain.value - holo.value,
        error: plain.error + holo.error,
        eta: setup.1,
        sector: Sector::Punctured,
    })
}

/// `f_{n,s} = ∇_{H_{n,s}} f(Σ)`, anchored at ∞ for points in 𝔻 and at 0 for
/// points outside the closed unit disk.
pub fn partial_derivative_f_ns(f: &dyn Functional, sigma: &Configuration, n: i32, s: Sign) -> Result<Derivative> {
    let inside = sigma.points().iter().all(|z| z.norm() < 1.0);
    let outside = sigma.points().iter().all(|z| z.norm() > 1.0);
    let (anchor, domain) = if inside {
        (Anchor::Infinity, DomainDescriptor::UnitDisk)
    } else if outside {
        (Anchor::Finite(Complex64::new(0.0, 0.0)), DomainDescriptor::Exterior)
    } else {
        return Err(Error::InvalidConfiguration("marked points straddle the unit circle".into()));
    };
    let h = basis_h(n, s).with_domain(domain);
    directional_derivative(f, sigma, &h, anchor, &DerivativeOptions::default())
}

/// Laurent form of a holomorphic derivative: `Σ_n b_n z^{-n-1}`.
#[derive(Debug, Clone)]
pub struct SeriesDerivative {
    pub sector: Sector,
    /// `(n, b_n)` pairs.
    pub coeffs: Vec<(i32, Complex64)>,
    /// Sum of the coefficient error estimates.
    pub error: f64,
    /// Set when the last coefficients do not decay.
    pub warning: Option<String>,
}

impl SeriesDerivative {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(n, b)| b * z.powi(-n - 1)).sum()
    }

    fn check_decay(&mut self) {
        let mags: Vec<f64> = self.coeffs.iter().map(|(_, b)| b.norm()).collect();
        let peak = mags.iter().cloned().fold(0.0, f64::max);
        let tail = mags.iter().rev().take(3).cloned().fold(0.0, f64::max);
        if peak > 0.0 && tail > 1e-3 * peak {
            self.warning = Some(format!(
                "coefficients do not decay (tail {tail:.2e} vs peak {peak:.2e}); marked points may be too close to the circle"
            ));
        }
    }
}

/// `Δ^{r𝔻}_{∞;z} = ½ Σ_{n≥0,s} z^{-n-1} r^{n-1} e^{-iπs/4} ∇_{r^{1-n}H_{n,s}} f`
/// for marked points in `r𝔻`; valid for `|z|` beyond the points.
pub fn holo_derivative_series_scaled(f: &dyn Functional, sigma: &Configuration, n_max: usize, r: f64) -> Result<SeriesDerivative> {
    if !(r > 0.0) || sigma.points().iter().any(|z| z.norm() >= r) {
        return Err(Error::InvalidConfiguration(format!("marked points must lie in the disk of radius {r}")));
    }
    let domain = DomainDescriptor::disk(Complex64::new(0.0, 0.0), r)?;
    let opts = DerivativeOptions::default();
    let mut out = SeriesDerivative { sector: Sector::Disk, coeffs: Vec::new(), error: 0.0, warning: None };
    for n in 0..=n_max as i32 {
        let mut b = Complex64::new(0.0, 0.0);
        let back = r.powi(n - 1);
        for s in Sign::BOTH {
            let h = basis_h(n, s).scaled(Complex64::new(r.powi(1 - n), 0.0)).with_domain(domain.clone());
            let d = directional_derivative(f, sigma, &h, Anchor::Infinity, &opts)?;
            b += 0.5 * s.phase().conj() * d.value * back;
            out.error += 0.5 * d.error * back;
        }
        out.coeffs.push((n, b));
    }
    out.check_decay();
    Ok(out)
}

/// Interior series on the unit disk.
pub fn holo_derivative_series(f: &dyn Functional, sigma: &Configuration, n_max: usize) -> Result<SeriesDerivative> {
    holo_derivative_series_scaled(f, sigma, n_max, 1.0)
}

/// `Δ^{Ĉ∖𝔻̄}_{0;z} = -½ Σ_{n≤2,s} z^{-n-1} e^{-iπs/4} f_{n,s}` for marked
/// points outside the closed unit disk; valid for `|z|` inside them.
pub fn holo_derivative_series_exterior(f: &dyn Functional, sigma: &Configuration, n_terms: usize) -> Result<SeriesDerivative> {
    if sigma.points().iter().any(|z| z.norm() <= 1.0) {
        return Err(Error::InvalidConfiguration("marked points must lie outside the closed unit disk".into()));
    }
    let opts = DerivativeOptions::default();
    let anchor = Anchor::Finite(Complex64::new(0.0, 0.0));
    let mut out = SeriesDerivative { sector: Sector::Exterior, coeffs: Vec::new(), error: 0.0, warning: None };
    for k in 0..=n_terms as i32 {
        let n = 2 - k;
        let mut b = Complex64::new(0.0, 0.0);
        for s in Sign::BOTH {
            let h = basis_h(n, s).with_domain(DomainDescriptor::Exterior);
            let d = directional_derivative(f, sigma, &h, anchor, &opts)?;
            b -= 0.5 * s.phase().conj() * d.value;
            out.error += 0.5 * d.error;
        }
        out.coeffs.push((n, b));
    }
    out.check_decay();
    Ok(out)
}

/// Directional derivative along an arbitrary field with default options.
pub fn gradient_along(f: &dyn Functional, sigma: &Configuration, h: &VectorField, anchor: Anchor) -> Result<Derivative> {
    directional_derivative(f, sigma, h, anchor, &DerivativeOptions::default())
}
