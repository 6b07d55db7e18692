use std::sync::Arc;

use confcalc_core::analytic_core::{ConformalMap, DomainDescriptor, Mobius};
use confcalc_core::cft_ward::*;
use confcalc_core::derivative_engine::*;
use confcalc_core::vector_fields::{basis_h, Anchor, Sign};
use confcalc_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_point() -> Configuration {
    Configuration::sphere_gff(vec![c(0.1, 0.2), c(-0.3, -0.25)], &[1.0, -1.0]).unwrap()
}

#[test]
fn mobius_covariance() {
    let s = two_point();
    let f: SharedFunctional = Arc::new(GffSphere);
    let w = c(0.6, -0.7);
    for g in [
        Mobius::affine(c(1.7, 0.0), c(0.0, 0.0)).unwrap(),
        Mobius::affine(Complex64::from_polar(1.0, 0.8), c(0.0, 0.0)).unwrap(),
        Mobius::translation(c(0.4, -0.3)),
        Mobius::inversion(),
    ] {
        let r = check_mobius_covariance(f.clone(), &s, &g, w).unwrap();
        eprintln!("cov {r:.3e}");
        assert!(r < 1e-6);
    }
}

#[test]
fn composition_rule() {
    let s = two_point();
    let f: SharedFunctional = Arc::new(GffSphere);
    let w = c(0.6, -0.7);
    let g1 = ConformalMap::polynomial(0, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.05, 0.02)], DomainDescriptor::disk(c(0.0, 0.0), 2.0).unwrap()).unwrap();
    let g2 = ConformalMap::polynomial(0, vec![c(0.1, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-0.03, 0.0)], DomainDescriptor::disk(c(0.0, 0.0), 2.0).unwrap()).unwrap();
    let t = std::time::Instant::now();
    let th = connection_theta(f.clone(), &s, &g1, w).unwrap();
    eprintln!("theta g1 = {} ± {:.2e}", th.value, th.error);
    let r = composition_check(f, &s, &g1, &g2, w).unwrap();
    eprintln!("transcon {:.3e} ± {:.2e} {:?}", r.value.norm(), r.error, t.elapsed());
    assert!(r.value.norm() < 1e-5);
}

#[test]
fn series_point_and_scale() {
    let s = two_point();
    let f = GffSphere;
    let ser = holo_derivative_series(&f, &s, 40).unwrap();
    let ser8 = holo_derivative_series_scaled(&f, &s, 40, 0.8).unwrap();
    for z in [c(2.0, 0.0), c(0.0, -2.0), c(1.3, 1.5)] {
        let p = holo_derivative_point(&f, &s, z).unwrap();
        eprintln!("series-point {:.3e}  scale {:.3e} warn {:?}", (ser.eval(z) - p.value).norm(), (ser.eval(z) - ser8.eval(z)).norm(), ser.warning);
        assert!((ser.eval(z) - p.value).norm() < 1e-6);
        assert!((ser.eval(z) - ser8.eval(z)).norm() < 1e-7);
    }
    let out = Configuration::sphere_gff(vec![c(2.0, 0.5), c(-1.5, 1.5)], &[1.0, -1.0]).unwrap();
    let ext = holo_derivative_series_exterior(&f, &out, 40).unwrap();
    let z = c(0.3, 0.2);
    let p = holo_derivative_point(&f, &out, z).unwrap();
    eprintln!("exterior {:.3e}", (ext.eval(z) - p.value).norm());
    assert!((ext.eval(z) - p.value).norm() < 1e-6);
}

#[test]
fn anchors_chain_additivity() {
    let s = two_point();
    let f = GffSphere;
    let h = basis_h(2, Sign::Plus);
    let spread = anchor_spread(&f, &s, &h, &[Anchor::Infinity, Anchor::Finite(c(-3.0, 0.0)), Anchor::Finite(c(0.0, -2.0))]).unwrap();
    eprintln!("anchor spread {spread:.3e}");
    assert!(spread < 1e-7);
    let sf: SharedFunctional = Arc::new(GffSphere);
    let w = c(0.7, 0.4);
    let r = chain_rule_check(sf.clone(), |x| x.exp(), |x| x.exp(), &s, w).unwrap();
    eprintln!("chain {:.3e}", r.value.norm());
    assert!(r.value.norm() < 1e-6);
    let (a, _) = additivity_check(&f, &s, w).unwrap();
    eprintln!("additivity {:.3e}", a.value.norm());
    let hp = Configuration::halfplane(vec![c(0.0, 1.0)], &[0.5]).unwrap();
    let (a, parts) = additivity_check(&HalfPlaneOnePoint, &hp, w).unwrap();
    eprintln!("additivity hp {:.3e} parts {}", a.value.norm(), parts.len());
    assert!(a.value.norm() < 1e-6);
}

#[test]
fn continuum_form() {
    let hp = Configuration::halfplane(vec![c(0.0, 1.0)], &[0.5]).unwrap();
    let t = std::time::Instant::now();
    let r = boundary_continuum_form(&HalfPlaneOnePoint, &hp, c(0.5, 0.5)).unwrap();
    eprintln!("continuum {:.3e} rel {:.3e} {:?}", r.residual(), r.residual() / r.oracle.norm(), t.elapsed());
    assert!(r.residual() < 1e-4 * r.oracle.norm());
}
