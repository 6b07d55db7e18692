use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Radii of the annulus and of the circles the solver works on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnularSetup {
    pub rho_a: f64,
    pub rho_b: f64,
    /// Iteration contour `ρ̃_B`, a quarter of the width inside `ρ_B`.
    pub rho_b_tilde: f64,
    /// `ρ̃_A`, a quarter of the width outside `ρ_A`.
    pub inner: f64,
    /// Circle carrying the `g_{A'}` integral, an eighth of the width outside `ρ_A`.
    pub a_contour: f64,
    pub mid: f64,
    pub outer: f64,
}

impl AnnularSetup {
    pub fn new(rho_a: f64, rho_b: f64) -> Result<Self> {
        if !(rho_a > 0.0 && rho_b.is_finite()) || rho_a >= rho_b {
            return Err(Error::InvalidConfiguration(format!(
                "annulus needs 0 < rho_a < rho_b, got rho_a = {rho_a}, rho_b = {rho_b}"
            )));
        }
        let q = 0.25 * (rho_b - rho_a);
        Ok(AnnularSetup {
            rho_a,
            rho_b,
            rho_b_tilde: rho_b - q,
            inner: rho_a + q,
            a_contour: rho_a + 0.5 * q,
            mid: 0.5 * (rho_a + rho_b),
            outer: rho_b - q,
        })
    }

    /// Distance `S` between `∂B̃` and `∂B` (equal to that between `∂Ã` and `∂A`).
    pub fn gap(&self) -> f64 {
        self.rho_b - self.rho_b_tilde
    }
}

/// Quantities entering the sufficient condition `|h|_X < q/(γ_X + 𝓡⁻¹)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallnessReport {
    /// `sup |h|` on the boundary circles of `X`.
    pub h_x: f64,
    pub x_radii: (f64, f64),
    /// Length of `∂X`.
    pub l_x: f64,
    /// Lengths of `∂B̃` and `∂Ã`.
    pub ell: f64,
    pub ell_prime: f64,
    pub a: f64,
    pub big_r: f64,
    pub q: f64,
    pub gamma_x: f64,
    /// `q/(γ_X + 𝓡⁻¹)`.
    pub threshold: f64,
    /// Predicted contraction factor `γ_X |h|_X / q`.
    pub contraction: f64,
    pub satisfied: bool,
}

/// Evaluates the bound with `a = S/2`, `𝓡 = S - a`, on circles.
pub fn smallness_diagnostics<F>(h: F, setup: &AnnularSetup) -> Result<SmallnessReport>
where
    F: Fn(Complex64) -> Complex64,
{
    let s = setup.gap();
    let a = 0.5 * s;
    let big_r = s - a;
    let widen = 0.5 * a + big_r;
    let x_radii = (setup.inner - widen, setup.rho_b_tilde + widen);
    let mut h_x: f64 = 0.0;
    for r in [x_radii.0, x_radii.1] {
        for k in 0..512 {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / 512.0);
            let v = h(z);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::ContourSingularity { at: z });
            }
            h_x = h_x.max(v.norm());
        }
    }
    let l_x = 2.0 * PI * (x_radii.0 + x_radii.1);
    let ell = 2.0 * PI * setup.rho_b_tilde;
    let ell_prime = 2.0 * PI * setup.inner;
    let d = setup.rho_b_tilde - setup.inner;
    // on circles the infimum of the piecewise q(z) sits on the middle circle
    let q = (d / (2.0 * ell)).min(d / (2.0 * ell_prime + d));
    let gamma_x = 4.0 * l_x / (a * a);
    let threshold = q / (gamma_x + 1.0 / big_r);
    Ok(SmallnessReport {
        h_x,
        x_radii,
        l_x,
        ell,
        ell_prime,
        a,
        big_r,
        q,
        gamma_x,
        threshold,
        contraction: gamma_x * h_x / q,
        satisfied: h_x < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_validation() {
        assert!(AnnularSetup::new(1.5, 0.5).is_err());
        assert!(AnnularSetup::new(1.0, 1.0).is_err());
        let s = AnnularSetup::new(0.5, 1.5).unwrap();
        assert_eq!((s.inner, s.mid, s.rho_b_tilde), (0.75, 1.0, 1.25));
    }

    #[test]
    fn zero_and_scaling() {
        let s = AnnularSetup::new(0.5, 1.5).unwrap();
        let r0 = smallness_diagnostics(|_| Complex64::new(0.0, 0.0), &s).unwrap();
        assert!(r0.satisfied && r0.h_x == 0.0);
        let r1 = smallness_diagnostics(|z| 0.01 / z, &s).unwrap();
        let r2 = smallness_diagnostics(|z| 0.02 / z, &s).unwrap();
        assert_eq!(r2.h_x, 2.0 * r1.h_x);
        assert!(!r1.satisfied);
    }
}
