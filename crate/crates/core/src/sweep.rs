//! Error-versus-degree sweeps and slope fitting.

use crate::approximant::{default_grid_size, sup_error_with, PiecewiseApproximant, TestFunction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::params::Scheme;

/// One point of a convergence sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergencePoint {
    pub n: usize,
    pub alpha: Option<f64>,
    pub length: f64,
    pub error: f64,
}

/// Sup error of the scheme's approximant to `f` at each degree in `ns`.
///
/// Degrees are processed in parallel under [`Execution::Parallel`]; each
/// error estimate itself runs sequentially. The output follows `ns`.
pub fn convergence_sweep(
    scheme: &Scheme,
    f: &TestFunction,
    ns: &[usize],
    grid_size: Option<usize>,
    exec: Execution,
) -> Result<Vec<ConvergencePoint>> {
    exec.map(ns, |&n| {
        let spec = scheme.spec(n)?;
        let p = PiecewiseApproximant::build(f, spec)?;
        let grid = grid_size.unwrap_or_else(|| default_grid_size(n));
        let report = sup_error_with(f, &p, grid, Execution::Sequential)?;
        Ok(ConvergencePoint {
            n,
            alpha: spec.map.alpha(),
            length: spec.length,
            error: report.sup,
        })
    })
    .into_iter()
    .collect()
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidLength {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::Invalid("a slope needs at least two points".into()));
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return Err(Error::Invalid("abscissae are all equal".into()));
    }
    Ok(sxy / sxx)
}

/// Slope of `ln(error)` against `n^index`, fitted over the points whose error
/// is above `floor` (the pre-plateau part of the sweep).
pub fn log_error_slope(points: &[ConvergencePoint], index: f64, floor: f64) -> Result<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|p| p.error > floor)
        .map(|p| ((p.n as f64).powf(index), p.error.ln()))
        .unzip();
    least_squares_slope(&xs, &ys)
}
