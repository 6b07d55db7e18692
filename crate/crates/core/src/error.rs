use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("contour touches a singularity: non-finite integrand at {at}")]
    ContourSingularity { at: Complex64 },

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("no convergence after {iterations} iterations (last iterate {last}, residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        last: Complex64,
        residual: f64,
    },

    #[error("degenerate derivative at {at}")]
    DegenerateDerivative { at: Complex64 },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("deformation step too large: {0}")]
    StepTooLarge(String),

    #[error("flow horizon exceeded; largest valid time is {max_t}")]
    HorizonExceeded { max_t: f64 },

    #[error("boundary deviation too large (last residual {residual:e}): {detail}")]
    DeviationTooLarge { residual: f64, detail: String },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid deformation: {0}")]
    InvalidDeformation(String),

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("evaluation failed at step {eta:e}: {source}")]
    AtStep { eta: f64, source: Box<Error> },

    #[error("factorization did not converge after {iterations} iterations (last update {last_update:e})")]
    FactorizationDiverged { iterations: usize, last_update: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
