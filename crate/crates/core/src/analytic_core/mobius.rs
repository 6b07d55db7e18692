use num_complex::Complex64;

use crate::error::{Error, Result};

/// `z ↦ (az + b)/(cz + d)` with `ad - bc ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = (a.norm() * d.norm()).max(b.norm() * c.norm()).max(f64::MIN_POSITIVE);
        if !(det.norm() > 1e-14 * scale) {
            return Err(Error::InvalidMap(format!("Möbius determinant ad-bc = {det} vanishes")));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius { a: one(), b: zero(), c: zero(), d: one() }
    }

    pub fn affine(scale: Complex64, shift: Complex64) -> Result<Self> {
        Mobius::new(scale, shift, zero(), one())
    }

    pub fn translation(shift: Complex64) -> Self {
        Mobius { a: one(), b: shift, c: zero(), d: one() }
    }

    pub fn inversion() -> Self {
        Mobius { a: zero(), b: one(), c: one(), d: zero() }
    }

    /// Cayley transform `z ↦ (z - z0)/(z - conj z0)` taking ℍ onto 𝔻 and `z0 ↦ 0`.
    pub fn cayley(z0: Complex64) -> Result<Self> {
        if !(z0.im > 0.0) {
            return Err(Error::InvalidMap(format!("Cayley base point {z0} must lie in the upper half-plane")));
        }
        Mobius::new(one(), -z0, one(), -z0.conj())
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        self.det() / (den * den)
    }

    pub fn second_deriv(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        -2.0 * self.c * self.det() / (den * den * den)
    }

    /// The finite pole, if any.
    pub fn pole(&self) -> Option<Complex64> {
        if self.c.norm() == 0.0 {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    /// Image of ∞, if finite.
    pub fn at_infinity(&self) -> Option<Complex64> {
        if self.c.norm() == 0.0 {
            None
        } else {
            Some(self.a / self.c)
        }
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Mobius) -> Self {
        Mobius {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    pub fn is_affine(&self) -> bool {
        self.c.norm() == 0.0
    }
}
