//! Approximation of functions with endpoint singularities on `[0, 1]` by
//! exponential and slit-strip variable transforms, domain truncation and
//! Chebyshev interpolation.
//!
//! A function `f` is pulled back through a conformal map onto a (semi-)infinite
//! interval, truncated to `[-L, 0]` or `[-L, L]`, and interpolated there. The
//! crate also measures convergence and resolution of such schemes and
//! evaluates the predicted rates.

pub mod approximant;
pub mod chebyshev;
pub mod error;
pub mod exec;
pub mod maps;
pub mod params;
pub mod resolution;
pub mod sweep;

pub use approximant::{
    sup_error, ErrorReport, PiecewiseApproximant, Region, TestFunction, TransplantSpec,
};
pub use chebyshev::{bernstein_bound, cheb_points, ellipse_param, ChebGrid, ChebInterpolant};
pub use error::{Error, Result, ALPHA_FLOOR};
pub use exec::Execution;
pub use maps::{DomainKind, MapFamily, MapInstance};
pub use params::{
    params_for, predicted_c, AnalyticityProfile, ConvergencePrediction, ParameterRegime, Scheme,
};
pub use resolution::{
    b_alpha, measure_resolution, predict_ppw, xi_r, PpwPrediction, Resolution, ResolutionQuery,
};
pub use num_complex::Complex64;
