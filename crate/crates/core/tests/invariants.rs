use confcalc_core::analytic_core::{laurent_coeffs, schwarzian, CircleContour, ConformalMap, DomainDescriptor, Mobius};
use confcalc_core::annular_factorization::{smallness_diagnostics, AnnularSetup};
use confcalc_core::cft_ward::*;
use confcalc_core::derivative_engine::*;
use confcalc_core::vector_fields::*;
use confcalc_core::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn upper() -> impl Strategy<Value = Complex64> {
    (-1.5..1.5f64, 0.3..2.0f64).prop_map(|(x, y)| c(x, y))
}

fn two_point() -> Configuration {
    Configuration::sphere_gff(vec![c(0.1, 0.2), c(-0.3, -0.25)], &[1.0, -1.0]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn directional_derivative_is_real_linear(a in -2.0..2.0f64, b in -2.0..2.0f64, n in 0..4i32, m in 0..4i32) {
        let s = two_point();
        let h1 = basis_h(n, Sign::Plus);
        let h2 = basis_h(m, Sign::Minus);
        let sum = h1.scaled(c(a, 0.0)).add(&h2.scaled(c(b, 0.0)));
        let opts = DerivativeOptions { eta: Some(1e-4), ..Default::default() };
        let d = |h: &VectorField| directional_derivative(&GffSphere, &s, h, Anchor::Infinity, &opts).unwrap().value;
        let lhs = d(&sum);
        let rhs = a * d(&h1) + b * d(&h2);
        prop_assert!((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn derivative_does_not_depend_on_anchor(x in -4.0..-2.0f64, y in -4.0..4.0f64, n in 0..4i32) {
        let s = two_point();
        let h = basis_h(n, Sign::Plus);
        let spread = anchor_spread(&GffSphere, &s, &h, &[Anchor::Infinity, Anchor::Finite(c(x, y))]).unwrap();
        prop_assert!(spread < 1e-7, "{spread}");
    }

    #[test]
    fn halfplane_ward_is_mirror_symmetric(z in upper(), w in upper(), delta in 0.1..1.5f64) {
        prop_assume!((z - w).norm() > 0.1);
        let s = Configuration::halfplane(vec![z], &[delta]).unwrap();
        let mirrored = Configuration::halfplane(vec![-z.conj()], &[delta]).unwrap();
        let a = ward_rhs_halfplane(w, &s).unwrap();
        let b = ward_rhs_halfplane(-w.conj(), &mirrored).unwrap();
        prop_assert!((a.conj() - b).norm() < 1e-12 * (1.0 + a.norm()), "{a} vs {b}");
    }

    #[test]
    fn sphere_ward_is_translation_covariant(shift in upper(), w in upper()) {
        let pts = vec![c(0.0, -0.5), c(0.8, -0.3)];
        prop_assume!(pts.iter().all(|z| (z - w).norm() > 0.1));
        let s = Configuration::sphere_gff(pts.clone(), &[0.7, -0.7]).unwrap();
        let moved = Configuration::sphere_gff(pts.iter().map(|z| z + shift).collect(), &[0.7, -0.7]).unwrap();
        let a = ward_rhs_sphere(w, &s).unwrap();
        let b = ward_rhs_sphere(w + shift, &moved).unwrap();
        prop_assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn smallness_norm_scales_linearly(t in 0.1..10.0f64) {
        let setup = AnnularSetup::new(0.5, 1.5).unwrap();
        let one = smallness_diagnostics(|z| 0.01 / z + 0.02 * z * z, &setup).unwrap();
        let scaled = smallness_diagnostics(|z| t * (0.01 / z + 0.02 * z * z), &setup).unwrap();
        prop_assert!((scaled.h_x - t * one.h_x).abs() < 1e-14 * t * one.h_x);
        prop_assert_eq!(scaled.threshold, one.threshold);
        prop_assert!((scaled.contraction - t * one.contraction).abs() < 1e-12 * t * one.contraction);
    }

    #[test]
    fn schwarzian_ignores_outer_mobius(a in upper(), b in -0.5..0.5f64, eps in -0.1..0.1f64, w in upper()) {
        let m = Mobius::new(c(1.0, 0.0), a, c(0.0, b), c(2.0, 0.0)).unwrap();
        let w = 0.3 * w;
        let g = ConformalMap::polynomial(0, vec![c(0.0, 0.0), c(1.0, 0.0), c(eps, 0.0)], DomainDescriptor::Sphere).unwrap();
        prop_assume!(m.pole().map_or(true, |p| (g.eval(w).unwrap() - p).norm() > 0.5));
        let mg = ConformalMap::mobius(m).compose(&g);
        let d = (schwarzian(&mg, w).unwrap() - schwarzian(&g, w).unwrap()).norm();
        prop_assert!(d < 1e-9, "{d}");
    }

    #[test]
    fn mobius_inverse_round_trip(a in upper(), b in upper(), cc in upper(), z in upper()) {
        let m = Mobius::new(a, b, cc, c(1.0, 0.3)).unwrap();
        prop_assume!(m.pole().map_or(true, |p| (z - p).norm() > 0.1));
        let back = m.inverse().compose(&m).eval(z);
        prop_assert!((back - z).norm() < 1e-9 * (1.0 + z.norm()));
    }

    #[test]
    fn laurent_coefficients_round_trip(coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7)) {
        let a: Vec<Complex64> = coeffs.iter().map(|&(x, y)| c(x, y)).collect();
        let f = |z: Complex64| a.iter().enumerate().map(|(k, ak)| ak * z.powi(k as i32 - 3)).sum::<Complex64>();
        let got = laurent_coeffs(f, &CircleContour::new(c(0.0, 0.0), 1.0), -3, 3).unwrap();
        for (x, y) in got.iter().zip(&a) {
            prop_assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn coefficient_functionals_are_real_linear(x in -3.0..3.0f64, n in 0..8i32) {
        let h = basis_h(n, Sign::Plus).scaled(c(x, 0.0)).add(&basis_h(n + 1, Sign::Minus));
        let v = coeff_c(&h, n, Sign::Plus).unwrap();
        prop_assert!((v - x).abs() < 1e-12);
    }
}
