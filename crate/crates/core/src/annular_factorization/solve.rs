use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::setup::{smallness_diagnostics, AnnularSetup, SmallnessReport};
use crate::analytic_core::{ConformalMap, DomainDescriptor};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const MAX_ITERATIONS: usize = 100;
const NODE_COUNTS: [usize; 4] = [256, 512, 1024, 2048];

/// Taylor series `Σ c_n z^n`.
#[derive(Debug, Clone)]
struct Taylor(Vec<Complex64>);

impl Taylor {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, c) in self.0.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * n as f64;
        }
        acc
    }
}

fn circle(r: f64, m: usize) -> Vec<Complex64> {
    (0..m).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / m as f64)).collect()
}

/// Laurent coefficients `a_n`, `n = -m/2+1 ..= m/2-1`, of samples on `|z| = r`,
/// returned as `(nonnegative, negative)` with `negative[k] = a_{-k-1}`.
fn laurent(samples: &[Complex64], r: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let m = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let pos = (0..m / 2).map(|n| buf[n] / m as f64 * r.powi(-(n as i32))).collect();
    let neg = (1..m / 2).map(|k| buf[m - k] / m as f64 * r.powi(k as i32)).collect();
    (pos, neg)
}

/// Outcome of [`factorize`].
#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub g_b: ConformalMap,
    pub g_a_prime: ConformalMap,
    pub iterations: usize,
    pub final_update: f64,
    /// `sup |R_{n+1} - R_n|` on the iteration circle, per iteration.
    pub updates: Vec<f64>,
    /// Nodes on the iteration circle.
    pub nodes: usize,
    /// `sup |g_{A'}(g_B(z)) - g(z)|` on the middle circle.
    pub composition_residual: f64,
    /// Largest negative-power Laurent term of `g_B - id` on the middle circle.
    pub tail_b: f64,
    /// Largest nonnegative-power Laurent term of `g_{A'} - id` on the outer circle.
    pub tail_a: f64,
    pub diagnostics: SmallnessReport,
    pub warning: Option<String>,
}

impl FactorizationResult {
    /// Successive update ratios `δ_{n+1}/δ_n` while the updates are above
    /// rounding level.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.updates
            .windows(2)
            .filter(|w| w[0] > 1e-14 && w[1] > 1e-14)
            .map(|w| w[1] / w[0])
            .collect()
    }
}

fn iterate(
    h: &dyn Fn(Complex64) -> Result<Complex64>,
    r: f64,
    m: usize,
    tol: f64,
) -> Result<(Taylor, Vec<f64>)> {
    let nodes = circle(r, m);
    let mut big_r;
    let mut values = vec![Complex64::new(0.0, 0.0); m];
    let mut updates = Vec::new();
    for _ in 0..MAX_ITERATIONS {
        let samples = nodes
            .iter()
            .zip(&values)
            .map(|(y, rv)| h(y + rv))
            .collect::<Result<Vec<_>>>()?;
        let (pos, _) = laurent(&samples, r);
        let next = Taylor(pos.into_iter().map(|c| -c).collect());
        let next_values: Vec<Complex64> = nodes.iter().map(|y| next.eval(*y)).collect();
        let update = next_values.iter().zip(&values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        updates.push(update);
        big_r = next;
        values = next_values;
        if !update.is_finite() || (updates.len() > 3 && update > 1e3 * updates[0].max(1e-300)) {
            return Err(Error::FactorizationDiverged { iterations: updates.len(), last_update: update });
        }
        if update < tol {
            return Ok((big_r, updates));
        }
    }
    Err(Error::FactorizationDiverged { iterations: MAX_ITERATIONS, last_update: *updates.last().unwrap_or(&f64::NAN) })
}

/// Factorize with the default tolerance.
pub fn factorize(g: &ConformalMap, setup: &AnnularSetup) -> Result<FactorizationResult> {
    factorize_with(g, setup, DEFAULT_TOL)
}

pub fn factorize_with(g: &ConformalMap, setup: &AnnularSetup, tol: f64) -> Result<FactorizationResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfiguration("tolerance must be positive".into()));
    }
    let h = |z: Complex64| -> Result<Complex64> {
        let v = g.eval(z)? - z;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::ContourSingularity { at: z })
        }
    };
    let diagnostics = smallness_diagnostics(|z| h(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN)), setup)?;
    let r = setup.rho_b_tilde;

    // refine the node count until the Taylor tail of R is negligible
    let mut solved = None;
    for &m in &NODE_COUNTS {
        let (big_r, updates) = iterate(&h, r, m, tol)?;
        let scale = big_r.0.iter().enumerate().map(|(n, c)| c.norm() * r.powi(n as i32)).fold(1.0, f64::max);
        let tail = big_r.0[m / 4..].iter().enumerate().map(|(k, c)| c.norm() * r.powi((k + m / 4) as i32)).fold(0.0, f64::max);
        let done = tail <= 1e-15 * scale || m == NODE_COUNTS[NODE_COUNTS.len() - 1];
        solved = Some((big_r, updates, m));
        if done {
            break;
        }
    }
    let (big_r, updates, m) = solved.expect("at least one node count");

    let series = Arc::new(big_r);
    let (s1, s2) = (series.clone(), series.clone());
    let inverse_b = ConformalMap::custom_with_derivative(
        "z + R(z)",
        move |z| z + s1.eval(z),
        move |z| 1.0 + s2.deriv(z),
        setup.rho_b_tilde - setup.mid,
        DomainDescriptor::disk(Complex64::new(0.0, 0.0), setup.rho_b_tilde)?,
    );
    let g_b = inverse_b.inverse();

    // g_{A'}(u) = u - (1/2πi)∮_{ccw} ∂g_B(y) h(y) / (g_B(y) - u) dy
    let ys = circle(setup.a_contour, m);
    let mut poles = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for y in &ys {
        let (gb, dgb) = g_b.eval_with_deriv(*y)?;
        poles.push(gb);
        weights.push(dgb * h(*y)? * y / m as f64);
    }
    // expand 1/(p - u) = -Σ_{k≥1} p^{k-1} u^{-k}: g_{A'}(u) = u + Σ_k b_k u^{-k}
    let mut b = vec![Complex64::new(0.0, 0.0); m / 2];
    let mut powers = weights;
    for bk in b.iter_mut() {
        *bk = powers.iter().sum();
        for (pw, p) in powers.iter_mut().zip(&poles) {
            *pw *= p;
        }
    }
    let tail = Arc::new(SplitField { b: Taylor(Vec::new()), a: b });
    let (t1, t2) = (tail.clone(), tail.clone());
    let g_a_prime = ConformalMap::custom_with_derivative(
        "g_A'",
        move |u| u + t1.h_a_prime(u),
        move |u| 1.0 + t2.h_a_prime_deriv(u),
        setup.mid - setup.a_contour,
        DomainDescriptor::Sphere,
    );

    let mid = circle(setup.mid, m);
    let mut composition_residual: f64 = 0.0;
    let mut gb_minus_id = Vec::with_capacity(m);
    for z in &mid {
        let gb = g_b.eval(*z)?;
        gb_minus_id.push(gb - z);
        composition_residual = composition_residual.max((g_a_prime.eval(gb)? - g.eval(*z)?).norm());
    }
    let (_, neg) = laurent(&gb_minus_id, setup.mid);
    let tail_b = neg.iter().enumerate().map(|(k, c)| c.norm() * setup.mid.powi(-(k as i32) - 1)).fold(0.0, f64::max);
    let outer = circle(setup.outer, m);
    let ga_minus_id = outer.iter().map(|u| g_a_prime.eval(*u).map(|v| v - u)).collect::<Result<Vec<_>>>()?;
    let (pos, _) = laurent(&ga_minus_id, setup.outer);
    let tail_a = pos.iter().enumerate().map(|(n, c)| c.norm() * setup.outer.powi(n as i32)).fold(0.0, f64::max);

    let warning = (!diagnostics.satisfied).then(|| {
        format!(
            "sufficient smallness bound not met: |h|_X = {:.3e} vs threshold {:.3e}",
            diagnostics.h_x, diagnostics.threshold
        )
    });
    Ok(FactorizationResult {
        g_b,
        g_a_prime,
        iterations: updates.len(),
        final_update: *updates.last().unwrap_or(&0.0),
        updates,
        nodes: m,
        composition_residual,
        tail_b,
        tail_a,
        diagnostics,
        warning,
    })
}

/// Refactorize `g_{A'} ∘ g_B` and return the largest change in either factor
/// (sampled on the middle and outer circles).
pub fn refactorization_residual(result: &FactorizationResult, setup: &AnnularSetup) -> Result<f64> {
    let composed = result.g_a_prime.compose(&result.g_b);
    let again = factorize(&composed, setup)?;
    let mut worst: f64 = 0.0;
    for z in circle(setup.mid, 64) {
        worst = worst.max((again.g_b.eval(z)? - result.g_b.eval(z)?).norm());
    }
    for u in circle(setup.outer, 64) {
        worst = worst.max((again.g_a_prime.eval(u)? - result.g_a_prime.eval(u)?).norm());
    }
    Ok(worst)
}

/// First-order splitting `h = h_B + h_{A'}` of a field on the annulus:
/// `h_B` collects the nonnegative powers (analytic on `B`), `h_{A'}` the
/// negative ones (vanishing at ∞).
#[derive(Debug, Clone)]
pub struct SplitField {
    b: Taylor,
    /// `a[k]` multiplies `z^{-k-1}`.
    a: Vec<Complex64>,
}

impl SplitField {
    pub fn h_b(&self, z: Complex64) -> Complex64 {
        self.b.eval(z)
    }

    pub fn h_a_prime(&self, z: Complex64) -> Complex64 {
        let w = 1.0 / z;
        self.a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c) * w
    }

    fn h_a_prime_deriv(&self, z: Complex64) -> Complex64 {
        let w = 1.0 / z;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.a.iter().enumerate().rev() {
            acc = acc * w - c * (k + 1) as f64;
        }
        acc * w * w
    }
}

pub fn first_order_split<F>(h: F, setup: &AnnularSetup) -> Result<SplitField>
where
    F: Fn(Complex64) -> Complex64,
{
    let m = NODE_COUNTS[0];
    let samples: Vec<Complex64> = circle(setup.mid, m).into_iter().map(&h).collect();
    if let Some(k) = samples.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::ContourSingularity { at: circle(setup.mid, m)[k] });
    }
    let (pos, neg) = laurent(&samples, setup.mid);
    Ok(SplitField { b: Taylor(pos), a: neg })
}
