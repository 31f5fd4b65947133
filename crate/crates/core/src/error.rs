use thiserror::Error;

/// Smallest strip half-width usable in double precision.
///
/// Below this the slit-strip maps need `exp(pi / alpha)` beyond the range of
/// `f64` in at least one of their intermediate forms.
pub const ALPHA_FLOOR: f64 = 0.005;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("strip half-width alpha = {alpha} is below the double-precision floor {ALPHA_FLOOR}")]
    AlphaFloorViolation { alpha: f64 },

    #[error("expected {expected} samples, got {got}")]
    InvalidLength { expected: usize, got: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("regime {regime} is not compatible with map {map}: {reason}")]
    IncompatibleRegime {
        regime: &'static str,
        map: &'static str,
        reason: String,
    },

    #[error("analyticity profile is missing `{0}`")]
    MissingProfileField(&'static str),

    #[error("root bracket could not be established for alpha = {alpha}")]
    BracketFailure { alpha: f64 },

    #[error("point ({y1}, {y2}) lies on [-1, 1]; no Bernstein ellipse passes through it")]
    DegeneratePoint { y1: f64, y2: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain_desc: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        domain: domain_desc,
    }
}
