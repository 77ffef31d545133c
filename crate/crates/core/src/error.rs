use thiserror::Error;

/// Failures reported by the solvers.
///
/// Values are carried as `f64` regardless of the scalar type the computation
/// ran in, so the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the admissible domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("no root of {what} in [{lo}, {hi}]: endpoint values do not change sign")]
    Bracket { what: &'static str, lo: f64, hi: f64 },

    #[error("quadrature tolerance {requested:e} not met: estimate {estimate} with error {achieved:e}")]
    ToleranceNotMet {
        estimate: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("integrand is not finite at u = {at}")]
    NonFinite { at: f64 },

    #[error("ODE step size underflow at z = {at} (h = {step:e})")]
    StepFailure { at: f64, step: f64 },

    #[error("maximum iterations ({0}) exceeded")]
    MaxIterations(usize),

    /// The soliton shift sits at the inflection point of the soliton, where
    /// the boundary ratio is undefined. Carries the end-point derivative of
    /// the linearized solution, which must be nonzero.
    #[error("exceptional point phi''(a) = 0 reached; W'(end) = {w_prime_end}")]
    ExceptionalPoint { w_prime_end: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<R>(name: &'static str, value: f64, domain: &'static str) -> Result<R> {
    Err(Error::Domain {
        name,
        value,
        domain,
    })
}
