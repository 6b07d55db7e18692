use confcalc_core::cft_ward::*;
use confcalc_core::derivative_engine::*;
use confcalc_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn sphere_two_point_matches_ward() {
    let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
    for w in [c(0.4, 0.9), c(-1.2, 0.3), c(2.0, -1.5)] {
        let r = theorem4_check(&s, w).unwrap();
        eprintln!("sphere w={w} rel={:.3e} err={:.3e}", r.relative(), r.error);
        assert!(r.relative() < 1e-6);
    }
}

#[test]
fn drc_matches_ward() {
    let s = Configuration::sphere_gff(vec![c(0.0, 0.0), c(1.0, 0.0)], &[1.0, -1.0]).unwrap();
    for w in [c(0.4, 0.9), c(-1.2, 0.3)] {
        let d = drc_joukowsky_t(&GffSphere, &s, w, &DRC_EPS).unwrap();
        let o = ward_rhs_sphere(w, &s).unwrap();
        eprintln!("drc w={w} rel={:.3e} est={:.3e}", (d.value - o).norm() / o.norm(), d.error);
        assert!((d.value - o).norm() < 1e-4 * o.norm());
    }
}

#[test]
fn halfplane_onepoint_matches_ward() {
    let s = Configuration::halfplane(vec![c(0.0, 1.0)], &[0.5]).unwrap();
    for w in [c(0.5, 0.5), c(-1.0, 2.0)] {
        let t0 = std::time::Instant::now();
        let r = theorem4_check(&s, w).unwrap();
        eprintln!("hp w={w} rel={:.3e} err={:.3e} {:?}", r.residual() / r.oracle.norm(), r.error, t0.elapsed());
        assert!(r.residual() < 1e-5 * r.oracle.norm());
        let t0 = std::time::Instant::now();
        let q = reflection_decomposition_check(&HalfPlaneOnePoint, &s, w).unwrap();
        eprintln!("refl w={w} res={:.3e} {:?}", q.residual(), t0.elapsed());
        assert!(q.residual() < 1e-5 * q.oracle.norm());
    }
}
