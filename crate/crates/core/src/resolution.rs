//! δ-resolution: the smallest degree at which `exp(2 pi i omega x)` is
//! approximated to better than `delta`, measured and predicted.

use std::f64::consts::PI;

use crate::approximant::{default_grid_size, error_reaches, PiecewiseApproximant, TestFunction};
use crate::error::{domain, Error, Result, ALPHA_FLOOR};
use crate::exec::Execution;
use crate::maps::{gamma, MapFamily};
use crate::params::{ParameterRegime, Scheme};

/// One resolution measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionQuery {
    pub omega: f64,
    pub delta: f64,
    /// Degrees to scan, strictly increasing.
    pub n_grid: Vec<usize>,
    pub scheme: Scheme,
    /// Measurement grid size; `None` uses [`default_grid_size`] per degree.
    pub grid_size: Option<usize>,
}

impl ResolutionQuery {
    pub fn new(omega: f64, delta: f64, n_grid: Vec<usize>, scheme: Scheme) -> Result<Self> {
        if !omega.is_finite() {
            return Err(domain("omega", omega, "finite reals"));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(domain("delta", delta, "(0, 1)"));
        }
        if n_grid.is_empty() || n_grid[0] == 0 || n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "n grid must be non-empty, positive and strictly increasing".into(),
            ));
        }
        Ok(ResolutionQuery {
            omega,
            delta,
            n_grid,
            scheme,
            grid_size: None,
        })
    }

    pub fn with_grid_size(mut self, grid_size: usize) -> Self {
        self.grid_size = Some(grid_size);
        self
    }
}

/// Outcome of [`measure_resolution`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// First degree in the grid with error below `delta`, and the grid
    /// spacing just before it (the uncertainty of the measurement).
    Resolved { n: usize, step: usize },
    NotResolved,
}

impl Resolution {
    pub fn degree(self) -> Option<usize> {
        match self {
            Resolution::Resolved { n, .. } => Some(n),
            Resolution::NotResolved => None,
        }
    }
}

pub fn measure_resolution(q: &ResolutionQuery) -> Result<Resolution> {
    measure_resolution_with(q, Execution::default())
}

/// Scans `q.n_grid` in order and stops at the first degree whose sup error
/// is below `q.delta`. Degrees past the crossing are never built, so a
/// schedule that breaks the alpha floor late in the grid only fails if the
/// scan gets there.
pub fn measure_resolution_with(q: &ResolutionQuery, exec: Execution) -> Result<Resolution> {
    let f = TestFunction::ExpIOmega(q.omega);
    let mut prev = 0;
    for &n in &q.n_grid {
        let p = PiecewiseApproximant::build(&f, q.scheme.spec(n)?)?;
        let grid = q.grid_size.unwrap_or_else(|| default_grid_size(n));
        if !error_reaches(&f, &p, grid, q.delta, exec)? {
            return Ok(Resolution::Resolved { n, step: n - prev });
        }
        prev = n;
    }
    Ok(Resolution::NotResolved)
}

/// Predicted resolution law `n ~ coefficient * omega^power`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PpwPrediction {
    pub family: MapFamily,
    pub regime: &'static str,
    pub coefficient: f64,
    pub power: f64,
    pub xi_r: Option<f64>,
    pub b_alpha: Option<f64>,
}

impl PpwPrediction {
    pub fn predicted_n(&self, omega: f64) -> f64 {
        self.coefficient * omega.abs().powf(self.power)
    }
}

pub fn predict_ppw(family: MapFamily, regime: &ParameterRegime) -> Result<PpwPrediction> {
    regime.validate(family)?;
    let mut xi = None;
    let mut b = None;
    let (coefficient, power) = match (*regime, family) {
        (ParameterRegime::FixedAlphaGrowingL { c, .. }, MapFamily::PhiE) => {
            (PI.powf(1.5) * (2.0 * c / std::f64::consts::E).powf(0.75), 1.5)
        }
        (ParameterRegime::FixedAlphaGrowingL { alpha, c, .. }, MapFamily::PhiS) => {
            let alpha = alpha.expect("validated");
            let x = xi_r(alpha)?;
            xi = Some(x);
            let inner = c.sqrt() * PI * (1.0 - 2.0 * alpha / (PI * x * x)) * x;
            (inner.powf(1.5), 1.5)
        }
        (ParameterRegime::FixedAlphaGrowingL { c, .. }, MapFamily::PsiE) => {
            let h = PI * c / 2.0;
            (h * h, 2.0)
        }
        (ParameterRegime::FixedAlphaGrowingL { alpha, c, .. }, MapFamily::PsiS) => {
            let ba = b_alpha(alpha.expect("validated"))?;
            b = Some(ba);
            let h = 2.0 * PI * c * ba;
            (h * h, 2.0)
        }
        (ParameterRegime::FixedLShrinkingAlpha { l0, .. }, MapFamily::PhiS) => (PI * (1.0 + l0), 1.0),
        (ParameterRegime::FixedLShrinkingAlpha { l0, .. }, MapFamily::PsiS) => {
            (2.0 * PI * (0.5 + l0), 1.0)
        }
        // L tends to 1 (PhiS) or 1/2 (PsiS): pi points per wavelength.
        (ParameterRegime::ToleranceDriven { .. }, _) => (PI, 1.0),
        _ => unreachable!("validate rejects the remaining combinations"),
    };
    Ok(PpwPrediction {
        family,
        regime: regime.tag(),
        coefficient,
        power,
        xi_r: xi,
        b_alpha: b,
    })
}

fn xi_residual(alpha: f64, g: f64, xi: f64) -> f64 {
    let e = -PI * xi * xi / (4.0 * alpha) + PI * g / alpha;
    2.0 * alpha * (1.0 + e.exp()) - PI * xi * xi
}

/// Unique positive root of `2a(1 + exp(-pi x^2/(4a) + pi gamma(a)/a)) = pi x^2`.
pub fn xi_r(alpha: f64) -> Result<f64> {
    if !(alpha >= ALPHA_FLOOR) || !alpha.is_finite() {
        return Err(domain("alpha", alpha, "[0.005, inf)"));
    }
    let g = gamma(alpha)?;
    // The residual is positive at the lower end, where pi x^2 = 2a.
    let mut lo = (2.0 * alpha / PI).sqrt();
    let mut hi = 2.0 * lo;
    let mut doublings = 0;
    while xi_residual(alpha, g, hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 64 {
            return Err(Error::BracketFailure { alpha });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if xi_residual(alpha, g, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `sinh(pi/(2a)) / (1 + cosh(pi/(2a)))`, computed as `tanh(pi/(4a))`.
pub fn b_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(domain("alpha", alpha, "(0, inf)"));
    }
    Ok((PI / (4.0 * alpha)).tanh())
}

/// Default scan for [`measure_resolution`]: a linear grid with about 200
/// steps up to the predicted degree, continued to three times it.
pub fn default_n_grid(predicted_n: f64) -> Vec<usize> {
    let pred = predicted_n.max(1.0);
    let step = ((pred / 200.0).round() as usize).max(1);
    let stop = ((3.0 * pred).ceil() as usize).max(step);
    (1..).map(|k| k * step).take_while(|&n| n <= stop).collect()
}
