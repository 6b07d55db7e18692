use std::path::{Path, PathBuf};

use confcalc_core::annular_factorization::AnnularSetup;
use confcalc_core::derivative_engine::Configuration;
use confcalc_core::Complex64;
use serde::Deserialize;

use crate::ConfigError;

/// A complex number written as `[re, im]`.
pub type Pair = [f64; 2];

pub fn to_c(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Rectangular grid of evaluation points `w`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub re: [f64; 2],
    pub im: [f64; 2],
    /// Points along the real and imaginary directions.
    pub n: [usize; 2],
}

impl Grid {
    pub fn points(&self) -> Vec<Complex64> {
        let axis = |lo: f64, hi: f64, n: usize, k: usize| {
            if n == 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.n[0] * self.n[1]);
        for j in 0..self.n[1] {
            for i in 0..self.n[0] {
                out.push(Complex64::new(axis(self.re[0], self.re[1], self.n[0], i), axis(self.im[0], self.im[1], self.n[1], j)));
            }
        }
        out
    }

    fn validate(&self, what: &str) -> Result<(), ConfigError> {
        if self.n[0] == 0 || self.n[1] == 0 {
            return Err(ConfigError::invalid(format!("{what}.grid.n must be positive")));
        }
        if self.re.iter().chain(&self.im).any(|x| !x.is_finite()) {
            return Err(ConfigError::invalid(format!("{what}.grid bounds must be finite")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SphereSection {
    pub points: Vec<Pair>,
    pub charges: Vec<f64>,
    pub grid: Grid,
}

impl Default for SphereSection {
    fn default() -> Self {
        SphereSection {
            points: vec![[0.0, 0.0], [1.0, 0.0]],
            charges: vec![1.0, -1.0],
            grid: Grid { re: [-1.063, 1.737], im: [-0.847, 1.253], n: [5, 4] },
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct HalfPlaneSection {
    pub points: Vec<Pair>,
    pub deltas: Vec<f64>,
    pub grid: Grid,
}

impl Default for HalfPlaneSection {
    fn default() -> Self {
        HalfPlaneSection {
            points: vec![[0.0, 1.0]],
            deltas: vec![0.5],
            grid: Grid { re: [-1.5, 1.5], im: [0.35, 2.15], n: [4, 3] },
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DrcSection {
    pub grid: Grid,
    /// `ε/d` sequence for the extrapolation.
    pub eps: Vec<f64>,
}

impl Default for DrcSection {
    fn default() -> Self {
        DrcSection { grid: Grid { re: [-0.863, 1.537], im: [-0.547, 0.053], n: [5, 2] }, eps: vec![0.1, 0.05, 0.025] }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct FlowSection {
    /// Taylor coefficients of the field on the unit disk, lowest power 0.
    pub coeffs: Vec<Pair>,
    pub s: f64,
    pub t: f64,
    /// Time for the RK4 versus closed-form comparison on `z²`.
    pub quadratic_t: f64,
}

impl Default for FlowSection {
    fn default() -> Self {
        FlowSection { coeffs: vec![[0.2, 0.1], [0.0, 0.0], [0.0, 0.0], [0.5, -0.2]], s: 0.15, t: 0.25, quadratic_t: 0.1 }
    }
}

/// `coeff · z^power`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub power: i32,
    pub coeff: Pair,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct FactorizeSection {
    pub rho_a: f64,
    pub rho_b: f64,
    /// `g = z + Σ terms`.
    pub terms: Vec<Term>,
}

impl Default for FactorizeSection {
    fn default() -> Self {
        FactorizeSection { rho_a: 0.5, rho_b: 1.5, terms: vec![Term { power: -1, coeff: [0.01, 0.0] }] }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SchwarzianSection {
    /// `[a, b, c, d]` of `(az + b)/(cz + d)`.
    pub mobius: [Pair; 4],
    pub samples: usize,
    /// Half-width of the square the sample points are drawn from.
    pub box_size: f64,
    /// `ε` in the half-plane uniformizer `z + εz²` for the dual-path check.
    pub uniformizer_eps: f64,
}

impl Default for SchwarzianSection {
    fn default() -> Self {
        SchwarzianSection {
            mobius: [[1.0, 0.2], [0.3, 0.0], [0.5, -0.1], [1.0, 0.0]],
            samples: 100,
            box_size: 2.0,
            uniformizer_eps: 0.05,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DerivativePropsSection {
    pub points: Vec<Pair>,
    pub charges: Vec<f64>,
    pub trials: usize,
}

impl Default for DerivativePropsSection {
    fn default() -> Self {
        DerivativePropsSection { points: vec![[0.1, 0.2], [-0.3, -0.25]], charges: vec![1.0, -1.0], trials: 8 }
    }
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

/// Everything a run needs; every section falls back to its defaults.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Relative step `η₀` of the point derivatives.
    pub eta0: f64,
    /// Overrides every per-check tolerance when set.
    pub tol: Option<f64>,
    pub central_charge: f64,
    pub output: OutputSection,
    pub sphere: SphereSection,
    pub halfplane: HalfPlaneSection,
    pub drc: DrcSection,
    pub flow: FlowSection,
    pub factorize: FactorizeSection,
    pub schwarzian: SchwarzianSection,
    pub derivative_props: DerivativePropsSection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            eta0: confcalc_core::derivative_engine::ETA_REL,
            tol: None,
            central_charge: 1.0,
            output: OutputSection::default(),
            sphere: SphereSection::default(),
            halfplane: HalfPlaneSection::default(),
            drc: DrcSection::default(),
            flow: FlowSection::default(),
            factorize: FactorizeSection::default(),
            schwarzian: SchwarzianSection::default(),
            derivative_props: DerivativePropsSection::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn sphere_configuration(&self) -> Result<Configuration, ConfigError> {
        let s = &self.sphere;
        Configuration::sphere_gff(s.points.iter().map(|&p| to_c(p)).collect(), &s.charges)
            .map_err(|e| ConfigError::invalid(format!("sphere: {e}")))
    }

    pub fn halfplane_configuration(&self) -> Result<Configuration, ConfigError> {
        let h = &self.halfplane;
        Configuration::halfplane(h.points.iter().map(|&p| to_c(p)).collect(), &h.deltas)
            .map_err(|e| ConfigError::invalid(format!("halfplane: {e}")))
    }

    pub fn annular_setup(&self) -> Result<AnnularSetup, ConfigError> {
        let f = &self.factorize;
        if !(f.rho_a < f.rho_b) {
            return Err(ConfigError::invalid(format!("factorize: rho_a ({}) must be smaller than rho_b ({})", f.rho_a, f.rho_b)));
        }
        AnnularSetup::new(f.rho_a, f.rho_b).map_err(|e| ConfigError::invalid(format!("factorize: {e}")))
    }

    /// Applies command-line overrides on top of the file.
    pub fn with_overrides(mut self, seed: Option<u64>, eta0: Option<f64>, tol: Option<f64>) -> Result<Self, ConfigError> {
        if let Some(s) = seed {
            self.seed = s;
        }
        if let Some(e) = eta0 {
            self.eta0 = e;
        }
        if tol.is_some() {
            self.tol = tol;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.eta0 > 0.0 && self.eta0 < 1.0) {
            return Err(ConfigError::invalid(format!("eta0 must lie in (0, 1), got {}", self.eta0)));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError::invalid(format!("tol must be positive, got {t}")));
            }
        }
        if !self.central_charge.is_finite() {
            return Err(ConfigError::invalid("central_charge must be finite"));
        }
        if self.sphere.points.len() != self.sphere.charges.len() {
            return Err(ConfigError::invalid("sphere: points and charges differ in length"));
        }
        if self.halfplane.points.len() != self.halfplane.deltas.len() {
            return Err(ConfigError::invalid("halfplane: points and deltas differ in length"));
        }
        self.sphere_configuration()?;
        self.halfplane_configuration()?;
        self.annular_setup()?;
        self.sphere.grid.validate("sphere")?;
        self.halfplane.grid.validate("halfplane")?;
        self.drc.grid.validate("drc")?;
        if self.halfplane.grid.im[0] <= 0.0 || self.halfplane.grid.im[1] <= 0.0 {
            return Err(ConfigError::invalid("halfplane.grid must lie in the upper half-plane"));
        }
        if self.drc.eps.len() < 2 || self.drc.eps.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return Err(ConfigError::invalid("drc.eps needs at least two values in (0, 1)"));
        }
        let fl = &self.flow;
        if fl.coeffs.is_empty() || ![fl.s, fl.t, fl.quadratic_t].iter().all(|x| x.is_finite()) {
            return Err(ConfigError::invalid("flow: coeffs must be non-empty and times finite"));
        }
        let sw = &self.schwarzian;
        if sw.samples == 0 || !(sw.box_size > 0.0) {
            return Err(ConfigError::invalid("schwarzian: samples and box_size must be positive"));
        }
        let [a, b, c, d] = sw.mobius.map(to_c);
        if (a * d - b * c).norm() == 0.0 {
            return Err(ConfigError::invalid("schwarzian: Mobius determinant vanishes"));
        }
        let dp = &self.derivative_props;
        if dp.trials == 0 || dp.points.is_empty() || dp.points.len() != dp.charges.len() {
            return Err(ConfigError::invalid("derivative_props: need trials > 0 and matching, non-empty points and charges"));
        }
        if dp.points.iter().any(|p| to_c(*p).norm() >= 1.0) {
            return Err(ConfigError::invalid("derivative_props: points must lie in the unit disk"));
        }
        Configuration::sphere_gff(dp.points.iter().map(|&p| to_c(p)).collect(), &dp.charges)
            .map_err(|e| ConfigError::invalid(format!("derivative_props: {e}")))?;
        Ok(())
    }
}
