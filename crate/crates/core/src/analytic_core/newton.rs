use num_complex::Complex64;

use super::map::ConformalMap;
use crate::error::{Error, Result};

pub const MAX_NEWTON_ITERATIONS: usize = 50;
pub const NEWTON_TOL: f64 = 1e-13;

/// Solve `g(z) = w` by damped Newton iteration from `guess`.
///
/// Converged when `|g(z) - w| ≤ 1e-13 · max(1, |w|)`.
pub fn newton_invert(g: &ConformalMap, w: Complex64, guess: Complex64) -> Result<Complex64> {
    let tol = NEWTON_TOL * w.norm().max(1.0);
    let mut z = guess;
    let (mut gz, mut dz) = g.eval_with_deriv(z)?;
    let mut res = (gz - w).norm();
    for it in 0..MAX_NEWTON_ITERATIONS {
        if res <= tol {
            return Ok(z);
        }
        if !(dz.norm() > 0.0) || !dz.re.is_finite() {
            return Err(Error::DegenerateDerivative { at: z });
        }
        let step = (gz - w) / dz;
        let mut lambda = 1.0;
        loop {
            let trial = z - step * lambda;
            let ok = g.eval_with_deriv(trial).ok().filter(|(v, d)| v.re.is_finite() && v.im.is_finite() && d.re.is_finite());
            if let Some((v, d)) = ok {
                let r = (v - w).norm();
                if r < res || lambda < 1e-3 {
                    z = trial;
                    gz = v;
                    dz = d;
                    res = r;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-3 {
                return Err(Error::NoConvergence { iterations: it + 1, last: z, residual: res });
            }
        }
    }
    if res <= tol {
        Ok(z)
    } else {
        Err(Error::NoConvergence { iterations: MAX_NEWTON_ITERATIONS, last: z, residual: res })
    }
}

/// Invert along a sequence of targets, warm starting each solve from the
/// previous result.
pub fn newton_invert_path(g: &ConformalMap, targets: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(targets.len());
    let mut prev: Option<Complex64> = None;
    for &w in targets {
        let guess = prev.unwrap_or_else(|| g.inverse_guess(w));
        let z = match newton_invert(g, w, guess) {
            Ok(z) => z,
            Err(_) => newton_invert(g, w, g.inverse_guess(w))?,
        };
        out.push(z);
        prev = Some(z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_core::{DomainDescriptor, Mobius};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let id = ConformalMap::identity();
        let w = c(0.3, 0.1);
        assert!((newton_invert(&id, w, c(0.0, 0.0)).unwrap() - w).norm() < 1e-15);
        let two = ConformalMap::perturbation(&[(1, c(1.0, 0.0))], DomainDescriptor::Sphere).unwrap();
        assert!((newton_invert(&two, c(1.0, 0.0), c(0.0, 0.0)).unwrap() - 0.5).norm() < 1e-14);
        let g = ConformalMap::mobius(Mobius::new(c(1.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0), c(1.0, 0.0)).unwrap());
        let target = g.eval(c(0.4, 0.0)).unwrap();
        let z = newton_invert(&g.with_domain(DomainDescriptor::UnitDisk), target, target).unwrap();
        assert!((z - 0.4).norm() < 1e-13);
    }

    #[test]
    fn failure_carries_last_iterate() {
        // 1 + z² has a critical point at the starting guess
        let g = ConformalMap::polynomial(0, vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], DomainDescriptor::Sphere).unwrap();
        let err = newton_invert(&g, c(-2.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateDerivative { .. } | Error::NoConvergence { .. }));
    }

    #[test]
    fn warm_started_path() {
        let g = ConformalMap::perturbation(&[(2, c(0.1, 0.0))], DomainDescriptor::UnitDisk).unwrap();
        let zs: Vec<Complex64> = (0..32).map(|k| Complex64::from_polar(0.6, k as f64 * 0.2)).collect();
        let ws: Vec<Complex64> = zs.iter().map(|&z| g.eval(z).unwrap()).collect();
        let back = newton_invert_path(&g, &ws).unwrap();
        for (a, b) in back.iter().zip(&zs) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
