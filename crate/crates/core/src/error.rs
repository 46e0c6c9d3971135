use thiserror::Error;

/// Errors raised by the numerical kernels and the device model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature on [{a}, {b}] did not converge: estimate {estimate:e}, error {abs_error:e}")]
    NonConvergence {
        a: f64,
        b: f64,
        estimate: f64,
        abs_error: f64,
    },

    #[error("integrand has an algebraic tail; the integral diverges")]
    DivergentTail,

    #[error("root is not bracketed: f({lo}) = {f_lo:e}, f({hi}) = {f_hi:e}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder exhausted {iterations} iterations near x = {last_x}")]
    RootIterationLimit { iterations: usize, last_x: f64 },

    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },

    #[error("zero-temperature lead has no pointwise derivative density")]
    ZeroTemperature,

    #[error("delta kernel has no pointwise density or quantile")]
    DeltaKernel,

    #[error("occupation has an atomic component; no pointwise density exists")]
    PureStep,

    #[error("input quantity is divergent")]
    DivergentInput,

    #[error("grid steps differ: {0} vs {1}")]
    StepMismatch(f64, f64),

    #[error("density is not symmetric about its median (deviation {0:e})")]
    AsymmetricInput(f64),

    #[error("time step {dt} exceeds the stability cap {cap}")]
    StepTooLarge { dt: f64, cap: f64 },

    #[error("closed form {closed_form} and numeric path {numeric} disagree")]
    CrossCheck { closed_form: f64, numeric: f64 },

    #[error("{name} out of domain: {reason}")]
    Domain { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
