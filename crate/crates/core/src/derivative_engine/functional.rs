use std::sync::Arc;

use num_complex::Complex64;

use super::configuration::{apply_action, Configuration};
use crate::analytic_core::ConformalMap;
use crate::error::Result;

/// A function on configurations near a base configuration.
///
/// Complex values stand for the pair (real part, imaginary part); all
/// derivatives are taken componentwise. Implementations must be pure.
pub trait Functional: Send + Sync {
    fn eval(&self, sigma: &Configuration) -> Result<Complex64>;

    fn label(&self) -> String {
        "functional".into()
    }
}

pub type SharedFunctional = Arc<dyn Functional>;

/// Closure-backed functional.
pub struct FnFunctional<F> {
    label: String,
    f: F,
}

impl<F> Functional for FnFunctional<F>
where
    F: Fn(&Configuration) -> Result<Complex64> + Send + Sync,
{
    fn eval(&self, sigma: &Configuration) -> Result<Complex64> {
        (self.f)(sigma)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

pub fn functional<F>(label: &str, f: F) -> FnFunctional<F>
where
    F: Fn(&Configuration) -> Result<Complex64> + Send + Sync,
{
    FnFunctional { label: label.into(), f }
}

/// `f ∘ g⁻¹`: evaluates `f(g⁻¹·Σ')`.
pub struct Pullback {
    inner: SharedFunctional,
    inverse: ConformalMap,
}

impl Pullback {
    pub fn new(f: SharedFunctional, g: &ConformalMap) -> Self {
        Pullback { inner: f, inverse: g.inverse() }
    }
}

impl Functional for Pullback {
    fn eval(&self, sigma: &Configuration) -> Result<Complex64> {
        self.inner.eval(&apply_action(&self.inverse, sigma)?)
    }

    fn label(&self) -> String {
        format!("{} ∘ ({})⁻¹", self.inner.label(), self.inverse.label())
    }
}

/// `F ∘ f` for a real function `F` of the real part of `f`.
pub struct Composed {
    inner: SharedFunctional,
    outer: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Composed {
    pub fn new<F>(f: SharedFunctional, outer: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Composed { inner: f, outer: Arc::new(outer) }
    }
}

impl Functional for Composed {
    fn eval(&self, sigma: &Configuration) -> Result<Complex64> {
        Ok(Complex64::new((self.outer)(self.inner.eval(sigma)?.re), 0.0))
    }

    fn label(&self) -> String {
        format!("F ∘ {}", self.inner.label())
    }
}
