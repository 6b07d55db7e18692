use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::analytic_core::{cauchy_derivatives, eval_laurent, eval_laurent_deriv, ConformalMap, DomainDescriptor};
use crate::error::{Error, Result};

type FieldFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// The sign `s` in the basis fields `H_{n,s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// `e^{iπs/4}`.
    pub fn phase(self) -> Complex64 {
        Complex64::from_polar(1.0, self.value() * PI / 4.0)
    }
}

#[derive(Clone)]
pub enum FieldKind {
    /// `e^{iπs/4} z^n`.
    Monomial { n: i32, s: Sign },
    /// `e^{iθ}/(w - z)`.
    Pole { w: Complex64, phase: f64 },
    /// `a + b z + c z²`, the global fields.
    Quadratic { a: Complex64, b: Complex64, c: Complex64 },
    /// `Σ_k coeffs[k] z^{lowest+k}`.
    Series { lowest: i32, coeffs: Vec<Complex64> },
    /// `(h ∂g) ∘ g⁻¹`.
    Pushforward { map: ConformalMap, field: VectorField },
    /// `h ∂g`.
    LeftAction { map: ConformalMap, field: VectorField },
    /// `h ∘ g`.
    RightAction { map: ConformalMap, field: VectorField },
    Scaled { factor: Complex64, field: VectorField },
    Sum(Vec<VectorField>),
    Custom { label: String, f: FieldFn, df: Option<FieldFn>, scale: f64 },
}

/// A holomorphic vector field `h(z) ∂_z` on a domain.
#[derive(Clone)]
pub struct VectorField {
    kind: Arc<FieldKind>,
    domain: DomainDescriptor,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({})", self.label())
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl VectorField {
    pub fn new(kind: FieldKind, domain: DomainDescriptor) -> Self {
        VectorField { kind: Arc::new(kind), domain }
    }

    pub fn zero(domain: DomainDescriptor) -> Self {
        VectorField::quadratic(zero(), zero(), zero(), domain)
    }

    pub fn quadratic(a: Complex64, b: Complex64, c: Complex64, domain: DomainDescriptor) -> Self {
        VectorField::new(FieldKind::Quadratic { a, b, c }, domain)
    }

    pub fn constant(a: Complex64, domain: DomainDescriptor) -> Self {
        VectorField::quadratic(a, zero(), zero(), domain)
    }

    pub fn series(lowest: i32, coeffs: Vec<Complex64>, domain: DomainDescriptor) -> Self {
        VectorField::new(FieldKind::Series { lowest, coeffs }, domain)
    }

    pub fn custom<F>(label: &str, f: F, scale: f64, domain: DomainDescriptor) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        VectorField::new(FieldKind::Custom { label: label.into(), f: Arc::new(f), df: None, scale }, domain)
    }

    pub fn custom_with_derivative<F, D>(label: &str, f: F, df: D, scale: f64, domain: DomainDescriptor) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        D: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        VectorField::new(
            FieldKind::Custom { label: label.into(), f: Arc::new(f), df: Some(Arc::new(df)), scale },
            domain,
        )
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    pub fn with_domain(&self, domain: DomainDescriptor) -> Self {
        VectorField { kind: self.kind.clone(), domain }
    }

    pub fn label(&self) -> String {
        match &*self.kind {
            FieldKind::Monomial { n, s } => format!("monomial({n},{})", if *s == Sign::Plus { "+" } else { "-" }),
            FieldKind::Pole { w, phase } => format!("pole({w},{phase})"),
            FieldKind::Quadratic { .. } => "closed-form".into(),
            FieldKind::Series { .. } => "coefficient-series".into(),
            FieldKind::Pushforward { .. } => "pushforward".into(),
            FieldKind::LeftAction { .. } => "left-action".into(),
            FieldKind::RightAction { .. } => "right-action".into(),
            FieldKind::Scaled { .. } => "scaled".into(),
            FieldKind::Sum(_) => "sum".into(),
            FieldKind::Custom { label, .. } => format!("custom:{label}"),
        }
    }

    /// `factor · h`.
    pub fn scaled(&self, factor: Complex64) -> VectorField {
        if let Some((a, b, c)) = self.as_quadratic() {
            return VectorField::quadratic(a * factor, b * factor, c * factor, self.domain.clone());
        }
        VectorField::new(FieldKind::Scaled { factor, field: self.clone() }, self.domain.clone())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        if let (Some(p), Some(q)) = (self.as_quadratic(), other.as_quadratic()) {
            return VectorField::quadratic(p.0 + q.0, p.1 + q.1, p.2 + q.2, self.domain.clone());
        }
        VectorField::new(FieldKind::Sum(vec![self.clone(), other.clone()]), self.domain.clone())
    }

    /// Coefficients `(a, b, c)` when the field is a global (quadratic) field.
    pub fn as_quadratic(&self) -> Option<(Complex64, Complex64, Complex64)> {
        match &*self.kind {
            FieldKind::Quadratic { a, b, c } => Some((*a, *b, *c)),
            FieldKind::Monomial { n, s } if (0..=2).contains(n) => {
                let mut q = [zero(); 3];
                q[*n as usize] = s.phase();
                Some((q[0], q[1], q[2]))
            }
            FieldKind::Series { lowest, coeffs } if *lowest >= 0 && *lowest + coeffs.len() as i32 <= 3 => {
                let mut q = [zero(); 3];
                for (k, c) in coeffs.iter().enumerate() {
                    q[*lowest as usize + k] = *c;
                }
                Some((q[0], q[1], q[2]))
            }
            FieldKind::Scaled { factor, field } => field.as_quadratic().map(|(a, b, c)| (a * factor, b * factor, c * factor)),
            FieldKind::Sum(fs) => {
                let mut acc = (zero(), zero(), zero());
                for f in fs {
                    let (a, b, c) = f.as_quadratic()?;
                    acc = (acc.0 + a, acc.1 + b, acc.2 + c);
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// Finite singular point of the field, when there is exactly one known.
    pub fn pole(&self) -> Option<Complex64> {
        match &*self.kind {
            FieldKind::Pole { w, .. } => Some(*w),
            FieldKind::Scaled { field, .. } => field.pole(),
            FieldKind::Monomial { n, .. } if *n < 0 => Some(zero()),
            FieldKind::Series { lowest, .. } if *lowest < 0 => Some(zero()),
            _ => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let v = match &*self.kind {
            FieldKind::Monomial { n, s } => s.phase() * z.powi(*n),
            FieldKind::Pole { w, phase } => Complex64::from_polar(1.0, *phase) / (w - z),
            FieldKind::Quadratic { a, b, c } => a + z * (b + z * c),
            FieldKind::Series { lowest, coeffs } => eval_laurent(*lowest, coeffs, z),
            FieldKind::Pushforward { map, field } => {
                let u = map.inverse().eval(z)?;
                field.eval(u)? * map.deriv(u)?
            }
            FieldKind::LeftAction { map, field } => field.eval(z)? * map.deriv(z)?,
            FieldKind::RightAction { map, field } => field.eval(map.eval(z)?)?,
            FieldKind::Scaled { factor, field } => factor * field.eval(z)?,
            FieldKind::Sum(fs) => {
                let mut acc = zero();
                for f in fs {
                    acc += f.eval(z)?;
                }
                acc
            }
            FieldKind::Custom { f, .. } => f(z),
        };
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularConfiguration(format!("vector field {} is singular at {z}", self.label())));
        }
        Ok(v)
    }

    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        let v = match &*self.kind {
            FieldKind::Monomial { n, s } => {
                if *n == 0 {
                    zero()
                } else {
                    s.phase() * (*n as f64) * z.powi(n - 1)
                }
            }
            FieldKind::Pole { w, phase } => {
                let d = w - z;
                Complex64::from_polar(1.0, *phase) / (d * d)
            }
            FieldKind::Quadratic { b, c, .. } => b + 2.0 * c * z,
            FieldKind::Series { lowest, coeffs } => eval_laurent_deriv(*lowest, coeffs, z),
            FieldKind::RightAction { map, field } => field.deriv(map.eval(z)?)? * map.deriv(z)?,
            FieldKind::Scaled { factor, field } => factor * field.deriv(z)?,
            FieldKind::Sum(fs) => {
                let mut acc = zero();
                for f in fs {
                    acc += f.deriv(z)?;
                }
                acc
            }
            FieldKind::Custom { df: Some(df), .. } => df(z),
            _ => self.contour_deriv(z)?,
        };
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularConfiguration(format!("vector field {} is singular at {z}", self.label())));
        }
        Ok(v)
    }

    fn contour_deriv(&self, z: Complex64) -> Result<Complex64> {
        let rho = 1e-2 * self.local_scale(z);
        let vals = cauchy_derivatives(|u| self.eval(u).unwrap_or(Complex64::new(f64::NAN, f64::NAN)), z, rho, 1)?;
        Ok(vals[1])
    }

    /// Length scale around `z` on which the field is analytic.
    pub fn local_scale(&self, z: Complex64) -> f64 {
        let s = match &*self.kind {
            FieldKind::Monomial { n, .. } if *n < 0 => z.norm(),
            FieldKind::Series { lowest, .. } if *lowest < 0 => z.norm(),
            FieldKind::Pole { w, .. } => (z - w).norm(),
            FieldKind::Pushforward { map, field } => match map.inverse().eval(z) {
                Ok(u) => field.local_scale(u).min(map.local_scale(u)) * map.deriv(u).map(|d| d.norm()).unwrap_or(1.0),
                Err(_) => 1.0,
            },
            FieldKind::LeftAction { map, field } => field.local_scale(z).min(map.local_scale(z)),
            FieldKind::RightAction { map, field } => match map.eval_with_deriv(z) {
                Ok((u, d)) => map.local_scale(z).min(field.local_scale(u) / d.norm().max(1e-300)),
                Err(_) => 1.0,
            },
            FieldKind::Scaled { field, .. } => field.local_scale(z),
            FieldKind::Sum(fs) => fs.iter().map(|f| f.local_scale(z)).fold(f64::INFINITY, f64::min),
            FieldKind::Custom { scale, .. } => *scale,
            _ => 1.0,
        };
        if s.is_finite() && s > 0.0 {
            s.min(1.0)
        } else {
            1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_recognition() {
        let h = VectorField::new(FieldKind::Monomial { n: 2, s: Sign::Minus }, DomainDescriptor::UnitDisk);
        let (a, b, q) = h.as_quadratic().unwrap();
        assert_eq!(a, zero());
        assert_eq!(b, zero());
        assert!((q - Sign::Minus.phase()).norm() < 1e-16);
        let m3 = VectorField::new(FieldKind::Monomial { n: 3, s: Sign::Plus }, DomainDescriptor::UnitDisk);
        assert!(m3.as_quadratic().is_none());
    }

    #[test]
    fn generic_derivative_falls_back_to_contour() {
        let h = VectorField::custom("exp", |z| z.exp(), 1.0, DomainDescriptor::Sphere);
        let z = c(0.2, 0.3);
        assert!((h.deriv(z).unwrap() - z.exp()).norm() < 1e-10);
    }
}
