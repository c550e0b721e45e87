use crate::flow::Stratum;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} outside [0, 1]")]
    InvalidModulus(f64),
    #[error("non-finite argument")]
    NonFinite,
    #[error("divergent period: K(k) is infinite at k = 1")]
    DivergentPeriod,
    #[error("amplitude {0} outside (-pi/2, pi/2) at k = 1")]
    AmplitudeOutOfRange(f64),
    #[error("invalid frame index {0}, expected 0..=5")]
    InvalidIndex(usize),
    #[error("point on the symmetry axis (r = {0:e})")]
    OnSymmetryAxis(f64),
    #[error("covector lies in {found:?}, expected {expected}")]
    WrongStratum {
        found: Stratum,
        expected: &'static str,
    },
    #[error("integrator failure: {0}")]
    Integrator(String),
    #[error("no sign change of {what} on [{lo}, {hi}]")]
    NoBracket {
        what: &'static str,
        lo: f64,
        hi: f64,
    },
    #[error("analytic and variational conjugate times disagree: {analytic} vs {variational}")]
    MethodDisagreement { analytic: f64, variational: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
