use confcalc_core::analytic_core::{ConformalMap, DomainDescriptor};
use confcalc_core::annular_factorization::*;
use confcalc_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn laurent_map(terms: &[(i32, f64)]) -> ConformalMap {
    let t: Vec<(i32, Complex64)> = terms.iter().map(|&(n, a)| (n, c(a, 0.0))).collect();
    ConformalMap::perturbation(&t, DomainDescriptor::annulus(0.5, 1.5).unwrap()).unwrap()
}

#[test]
fn inverse_power_perturbation() {
    let setup = AnnularSetup::new(0.5, 1.5).unwrap();
    let g = laurent_map(&[(-1, 0.01)]);
    let r = factorize(&g, &setup).unwrap();
    eprintln!("1/z: it {} res {:.3e} tails {:.3e} {:.3e} warn {:?}", r.iterations, r.composition_residual, r.tail_b, r.tail_a, r.warning);
    assert!(r.composition_residual < 1e-10);
    assert!(r.tail_b < 1e-9 && r.tail_a < 1e-9);
    let idem = refactorization_residual(&r, &setup).unwrap();
    eprintln!("idem {idem:.3e}");
    assert!(idem < 1e-9);
}

#[test]
fn mixed_perturbation_contracts() {
    let setup = AnnularSetup::new(0.5, 1.5).unwrap();
    let g = laurent_map(&[(-1, 0.02), (2, 0.02)]);
    let r = factorize(&g, &setup).unwrap();
    eprintln!("mixed: it {} res {:.3e} tails {:.3e} {:.3e} ratios {:?} predicted {:.3e}", r.iterations, r.composition_residual, r.tail_b, r.tail_a, r.contraction_ratios(), r.diagnostics.contraction);
    assert!(r.composition_residual < 1e-10);
    let idem = refactorization_residual(&r, &setup).unwrap();
    eprintln!("idem {idem:.3e}");
    assert!(idem < 1e-9);
}

#[test]
fn first_order_matches_cauchy_split() {
    let setup = AnnularSetup::new(0.5, 1.5).unwrap();
    let h = |z: Complex64| 1.0 / z + z * z - 0.3 / (z * z * z) + 0.5 * z;
    let split = first_order_split(h, &setup).unwrap();
    let t = 1e-5;
    let plus = factorize(&laurent_map(&[(-1, t), (2, t), (-3, -0.3 * t), (1, 0.5 * t)]), &setup).unwrap();
    let minus = factorize(&laurent_map(&[(-1, -t), (2, -t), (-3, 0.3 * t), (1, -0.5 * t)]), &setup).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..32 {
        let z = Complex64::from_polar(1.0, 0.2 * k as f64);
        let d = (plus.g_b.eval(z).unwrap() - minus.g_b.eval(z).unwrap()) / (2.0 * t);
        worst = worst.max((d - split.h_b(z)).norm());
    }
    eprintln!("split {worst:.3e}");
    assert!(worst < 1e-8);
}
