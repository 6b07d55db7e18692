use std::sync::Arc;

use confcalc_core::analytic_core::{schwarzian, ConformalMap, DomainDescriptor, Mobius};
use confcalc_core::annular_factorization::{factorize, refactorization_residual};
use confcalc_core::cft_ward::*;
use confcalc_core::derivative_engine::*;
use confcalc_core::vector_fields::*;
use confcalc_core::{Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{to_c, ExperimentConfig};
use crate::report::{Check, GridRow};
use crate::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    WardSphere,
    WardHalfPlane,
    Drc,
    Flow,
    Factorize,
    Schwarzian,
    DerivativeProps,
    All,
}

const SUITES: [(Suite, &str, &str); 8] = [
    (Suite::WardSphere, "ward-sphere", "holomorphic derivative of a vertex correlator against the sphere Ward identity on a w-grid"),
    (Suite::WardHalfPlane, "ward-halfplane", "half-plane one-point function: Ward identity and boundary reflection on a w-grid"),
    (Suite::Drc, "drc", "Joukowsky-limit stress tensor against the sphere Ward identity on a w-grid"),
    (Suite::Flow, "flow", "vector-field flows: semigroup law, commutation with the field, RK4 against closed form"),
    (Suite::Factorize, "factorize", "annular factorization g = g_A' o g_B: composition, tails, idempotence, contraction"),
    (Suite::Schwarzian, "schwarzian", "Schwarzian derivative: Mobius annihilation, composition law, one-point T dual path"),
    (Suite::DerivativeProps, "derivative-props", "seeded trials of linearity, anchor independence, covariance, chain rule, additivity"),
    (Suite::All, "all", "every suite above, in order, in one report"),
];

/// Suite names with one-line descriptions, in a fixed order.
pub fn list_suites() -> Vec<(&'static str, &'static str)> {
    SUITES.iter().map(|&(_, n, d)| (n, d)).collect()
}

impl Suite {
    pub fn name(self) -> &'static str {
        SUITES.iter().find(|(s, _, _)| *s == self).map(|(_, n, _)| *n).expect("every suite is listed")
    }

    pub fn from_name(name: &str) -> std::result::Result<Self, ConfigError> {
        SUITES
            .iter()
            .find(|(_, n, _)| *n == name)
            .map(|(s, _, _)| *s)
            .ok_or_else(|| ConfigError::UnknownSuite(name.into()))
    }
}

/// Checks and grid rows produced by a suite.
#[derive(Debug, Default)]
pub struct SuiteResults {
    pub checks: Vec<Check>,
    pub grids: Vec<(String, Vec<GridRow>)>,
}

pub fn execute(suite: Suite, cfg: &ExperimentConfig) -> std::result::Result<SuiteResults, ConfigError> {
    let single = |s: Suite| -> std::result::Result<SuiteResults, ConfigError> {
        match s {
            Suite::WardSphere => ward_sphere(cfg),
            Suite::WardHalfPlane => ward_halfplane(cfg),
            Suite::Drc => drc(cfg),
            Suite::Flow => Ok(flow(cfg)),
            Suite::Factorize => factorize_suite(cfg),
            Suite::Schwarzian => Ok(schwarzian_suite(cfg)),
            Suite::DerivativeProps => derivative_props(cfg),
            Suite::All => unreachable!(),
        }
    };
    if suite != Suite::All {
        return single(suite);
    }
    let mut all = SuiteResults::default();
    for &(s, name, _) in SUITES.iter().filter(|(s, _, _)| *s != Suite::All) {
        let r = single(s)?;
        all.checks.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("{name}: {}", c.name);
            c
        }));
        all.grids.extend(r.grids);
    }
    Ok(all)
}

fn tol(cfg: &ExperimentConfig, default: f64) -> f64 {
    cfg.tol.unwrap_or(default)
}

fn fmt_c(z: Complex64) -> String {
    format!("({:.4},{:.4})", z.re, z.im)
}

fn opts(cfg: &ExperimentConfig) -> DerivativeOptions {
    DerivativeOptions { eta_rel: cfg.eta0, ..Default::default() }
}

/// Runs `f`, recording a failed check instead of propagating the error.
fn attempt(out: &mut Vec<Check>, name: &str, tol: f64, f: impl FnOnce() -> Result<Check>) {
    out.push(f().unwrap_or_else(|e| Check::failed(name, tol, e)));
}

fn grid_row(w: Complex64, check: &Check) -> GridRow {
    GridRow { w, value: Complex64::new(check.value[0], check.value[1]), residual: check.residual }
}

fn ward_sphere(cfg: &ExperimentConfig) -> std::result::Result<SuiteResults, ConfigError> {
    let sigma = cfg.sphere_configuration()?;
    let t = tol(cfg, 1e-6);
    let mut out = SuiteResults::default();
    let mut rows = Vec::new();
    for w in cfg.sphere.grid.points() {
        let name = format!("ward w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let r = theorem4_check_with(&sigma, w, &opts(cfg))?;
            Ok(Check::new(name.clone(), r.value, r.oracle, r.relative(), t))
        });
        rows.push(grid_row(w, out.checks.last().expect("just pushed")));
    }
    out.grids.push(("ward-sphere".into(), rows));
    Ok(out)
}

fn ward_halfplane(cfg: &ExperimentConfig) -> std::result::Result<SuiteResults, ConfigError> {
    let sigma = cfg.halfplane_configuration()?;
    let t = tol(cfg, 1e-5);
    let mut out = SuiteResults::default();
    let mut rows = Vec::new();
    for w in cfg.halfplane.grid.points() {
        let name = format!("ward w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let r = theorem4_check_with(&sigma, w, &opts(cfg))?;
            Ok(Check::new(name.clone(), r.value, r.oracle, r.residual() / r.oracle.norm(), t))
        });
        rows.push(grid_row(w, out.checks.last().expect("just pushed")));
        let name = format!("reflection w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let r = reflection_decomposition_check_with(&HalfPlaneOnePoint, &sigma, w, &opts(cfg))?;
            Ok(Check::new(name.clone(), r.value, r.oracle, r.residual() / r.oracle.norm(), t))
        });
    }
    out.grids.push(("ward-halfplane".into(), rows));
    Ok(out)
}

fn drc(cfg: &ExperimentConfig) -> std::result::Result<SuiteResults, ConfigError> {
    let sigma = cfg.sphere_configuration()?;
    let t = tol(cfg, 1e-4);
    let mut out = SuiteResults::default();
    let mut rows = Vec::new();
    for w in cfg.drc.grid.points() {
        let name = format!("joukowsky w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let d = drc_joukowsky_t(&GffSphere, &sigma, w, &cfg.drc.eps)?;
            let o = ward_rhs_sphere(w, &sigma)?;
            Ok(Check::new(name.clone(), d.value, o, (d.value - o).norm() / o.norm(), t))
        });
        rows.push(grid_row(w, out.checks.last().expect("just pushed")));
    }
    out.grids.push(("drc".into(), rows));
    Ok(out)
}

fn ring(r: f64) -> impl Iterator<Item = Complex64> {
    (0..32).map(move |k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / 32.0))
}

fn flow(cfg: &ExperimentConfig) -> SuiteResults {
    let fc = &cfg.flow;
    let h = VectorField::series(0, fc.coeffs.iter().map(|&p| to_c(p)).collect(), DomainDescriptor::UnitDisk);
    let rk4 = FlowStrategy::Force(FlowMethod::Rk4);
    let mut out = SuiteResults::default();
    let flows = (|| -> Result<_> {
        Ok((exp_flow_with(&h, fc.s, rk4)?, exp_flow_with(&h, fc.t, rk4)?, exp_flow_with(&h, fc.s + fc.t, rk4)?))
    })();
    let name = "semigroup g_s(g_t(z)) = g_(s+t)(z)";
    attempt(&mut out.checks, name, tol(cfg, 1e-9), || {
        let (gs, gt, gst) = flows.clone()?;
        let mut worst: f64 = 0.0;
        for z in ring(0.4) {
            worst = worst.max((gs.map.eval(gt.map.eval(z)?)? - gst.map.eval(z)?).norm());
        }
        Ok(Check::bound(name, worst, tol(cfg, 1e-9)))
    });
    for (label, which) in [("s", 0), ("t", 1), ("s+t", 2)] {
        let name = format!("commutation h(g) = h g' at time {label}");
        attempt(&mut out.checks, &name, tol(cfg, 1e-8), || {
            let (gs, gt, gst) = flows.clone()?;
            let f = [gs, gt, gst].into_iter().nth(which).expect("three flows");
            Ok(Check::bound(name.clone(), f.commutation_residual(&h)?, tol(cfg, 1e-8)))
        });
    }
    let name = "RK4 against closed form for z^2";
    attempt(&mut out.checks, name, tol(cfg, 1e-10), || {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let sq = VectorField::quadratic(zero, zero, one, DomainDescriptor::UnitDisk);
        let num = exp_flow_with(&sq, fc.quadratic_t, rk4)?;
        let exact = quadratic_flow(zero, zero, one, fc.quadratic_t);
        let mut worst: f64 = 0.0;
        for z in ring(0.5) {
            worst = worst.max((num.map.eval(z)? - exact.eval(z)).norm());
        }
        Ok(Check::bound(name, worst, tol(cfg, 1e-10)))
    });
    out
}

fn factorize_suite(cfg: &ExperimentConfig) -> std::result::Result<SuiteResults, ConfigError> {
    let setup = cfg.annular_setup()?;
    let fc = &cfg.factorize;
    let terms: Vec<(i32, Complex64)> = fc.terms.iter().map(|t| (t.power, to_c(t.coeff))).collect();
    let domain = DomainDescriptor::annulus(fc.rho_a, fc.rho_b).map_err(|e| ConfigError::invalid(format!("factorize: {e}")))?;
    let g = ConformalMap::perturbation(&terms, domain).map_err(|e| ConfigError::invalid(format!("factorize: {e}")))?;
    let mut out = SuiteResults::default();
    let result = match factorize(&g, &setup) {
        Ok(r) => r,
        Err(e) => {
            out.checks.push(Check::failed("factorization", tol(cfg, 1e-10), e));
            return Ok(out);
        }
    };
    if let Some(w) = &result.warning {
        eprintln!("confcalc: factorize: {w}");
    }
    out.checks.push(Check::bound("composition g_A'(g_B(z)) = g(z)", result.composition_residual, tol(cfg, 1e-10)));
    out.checks.push(Check::bound("negative-power tail of g_B", result.tail_b, tol(cfg, 1e-9)));
    out.checks.push(Check::bound("positive-power tail of g_A'", result.tail_a, tol(cfg, 1e-9)));
    let name = "idempotence of refactorization";
    attempt(&mut out.checks, name, tol(cfg, 1e-9), || {
        Ok(Check::bound(name, refactorization_residual(&result, &setup)?, tol(cfg, 1e-9)))
    });
    let ratios = result.contraction_ratios();
    // the last ratio compares round-off with round-off
    if ratios.len() > 1 {
        let worst = ratios[..ratios.len() - 1].iter().cloned().fold(0.0, f64::max);
        out.checks.push(Check::bound("largest contraction ratio", worst, 0.5));
    }
    Ok(out)
}

fn schwarzian_suite(cfg: &ExperimentConfig) -> SuiteResults {
    let sc = &cfg.schwarzian;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = SuiteResults::default();
    let [a, b, c, d] = sc.mobius.map(to_c);
    let t = tol(cfg, 1e-12);
    match Mobius::new(a, b, c, d) {
        Ok(m) => {
            let g = ConformalMap::mobius(m);
            let margin = 0.25 * sc.box_size;
            for _ in 0..sc.samples {
                let z = loop {
                    let z = Complex64::new(rng.gen_range(-sc.box_size..sc.box_size), rng.gen_range(-sc.box_size..sc.box_size));
                    if m.pole().map_or(true, |p| (z - p).norm() > margin) {
                        break z;
                    }
                };
                let name = format!("Mobius annihilation z={}", fmt_c(z));
                attempt(&mut out.checks, &name, t, || {
                    let s = schwarzian(&g, z)?;
                    Ok(Check::new(name.clone(), s, Complex64::new(0.0, 0.0), s.norm(), t))
                });
            }
        }
        Err(e) => out.checks.push(Check::failed("Mobius map", t, e)),
    }
    let t = tol(cfg, 1e-10);
    let maps = (|| -> Result<_> {
        let big = DomainDescriptor::disk(Complex64::new(0.0, 0.0), 3.0)?;
        let cx = Complex64::new;
        let f = ConformalMap::polynomial(0, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.1, 0.05)], big.clone())?;
        let g = ConformalMap::polynomial(0, vec![cx(0.1, 0.0), cx(1.0, 0.0), cx(0.05, 0.0)], big)?;
        Ok((f, g))
    })();
    for _ in 0..10 {
        let w = Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..std::f64::consts::TAU));
        let name = format!("composition law w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let (f, g) = maps.clone()?;
            let d = g.deriv(w)?;
            let rhs = d * d * schwarzian(&f, g.eval(w)?)? + schwarzian(&g, w)?;
            let lhs = schwarzian(&f.compose(&g), w)?;
            Ok(Check::new(name.clone(), lhs, rhs, (lhs - rhs).norm(), t))
        });
    }
    let t = tol(cfg, 1e-8);
    let cc = CentralCharge(cfg.central_charge);
    for w in [Complex64::new(0.1, 0.6), Complex64::new(-0.4, 1.1), Complex64::new(0.7, 0.9), Complex64::new(0.0, 2.0)] {
        let name = format!("one-point T dual path w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let cx = Complex64::new;
            let u = ConformalMap::polynomial(0, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(sc.uniformizer_eps, 0.0)], DomainDescriptor::HalfPlane)?;
            let direct = onepoint_t(&u, w, cc)?;
            let dual = onepoint_t_dual(&u, w, cc)?;
            Ok(Check::new(name.clone(), direct, dual, (direct - dual).norm(), t))
        });
    }
    out
}

fn derivative_props(cfg: &ExperimentConfig) -> std::result::Result<SuiteResults, ConfigError> {
    let dp = &cfg.derivative_props;
    let sigma = Configuration::sphere_gff(dp.points.iter().map(|&p| to_c(p)).collect(), &dp.charges)
        .map_err(|e| ConfigError::invalid(format!("derivative_props: {e}")))?;
    let reach = sigma.points().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let f: SharedFunctional = Arc::new(GffSphere);
    let o = opts(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = SuiteResults::default();
    let cx = Complex64::new;
    for trial in 0..dp.trials {
        let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (n, m) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let name = format!("[{trial}] real linearity a={a:.3} b={b:.3} n={n} m={m}");
        let t = tol(cfg, 1e-8);
        attempt(&mut out.checks, &name, t, || {
            let h1 = basis_h(n, Sign::Plus);
            let h2 = basis_h(m, Sign::Minus);
            let sum = h1.scaled(cx(a, 0.0)).add(&h2.scaled(cx(b, 0.0)));
            let fixed = DerivativeOptions { eta: Some(directional_derivative(f.as_ref(), &sigma, &sum, Anchor::Infinity, &o)?.eta), ..o };
            let d = |h: &VectorField| directional_derivative(f.as_ref(), &sigma, h, Anchor::Infinity, &fixed).map(|d| d.value);
            let lhs = d(&sum)?;
            let rhs = a * d(&h1)? + b * d(&h2)?;
            Ok(Check::new(name.clone(), lhs, rhs, (lhs - rhs).norm() / (1.0 + rhs.norm()), t))
        });
        let anchor = cx(rng.gen_range(-4.0..-2.0), rng.gen_range(-4.0..4.0));
        let name = format!("[{trial}] anchor independence anchor={}", fmt_c(anchor));
        let t = tol(cfg, 1e-7);
        attempt(&mut out.checks, &name, t, || {
            let h = basis_h(n, Sign::Plus);
            let at_inf = directional_derivative(f.as_ref(), &sigma, &h, Anchor::Infinity, &o)?.value;
            let at_a = directional_derivative(f.as_ref(), &sigma, &h, Anchor::Finite(anchor), &o)?.value;
            Ok(Check::new(name.clone(), at_a, at_inf, (at_a - at_inf).norm(), t))
        });
        let w = Complex64::from_polar(reach + rng.gen_range(0.4..1.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let t = tol(cfg, 1e-6);
        let maps = [
            ("dilation", Mobius::affine(cx(1.7, 0.0), cx(0.0, 0.0))),
            ("rotation", Mobius::affine(Complex64::from_polar(1.0, 0.8), cx(0.0, 0.0))),
            ("translation", Ok(Mobius::translation(cx(0.4, -0.3)))),
            ("inversion", Ok(Mobius::inversion())),
        ];
        for (label, g) in maps {
            let name = format!("[{trial}] covariance under {label} w={}", fmt_c(w));
            attempt(&mut out.checks, &name, t, || {
                let r = check_mobius_covariance(f.clone(), &sigma, &g?, w)?;
                Ok(Check::bound(name.clone(), r, t))
            });
        }
        let name = format!("[{trial}] chain rule exp w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let r = chain_rule_check(f.clone(), |x| x.exp(), |x| x.exp(), &sigma, w)?;
            Ok(Check::bound(name.clone(), r.value.norm(), t))
        });
        let name = format!("[{trial}] additivity w={}", fmt_c(w));
        attempt(&mut out.checks, &name, t, || {
            let (r, _) = additivity_check(f.as_ref(), &sigma, w)?;
            Ok(Check::bound(name.clone(), r.value.norm(), t))
        });
    }
    Ok(out)
}
