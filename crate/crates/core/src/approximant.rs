//! Piecewise approximants on `[0, 1]`: a Chebyshev interpolant of the
//! transplanted, truncated function in the middle and constant tails near the
//! singular endpoints.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::chebyshev::{cheb_points, ChebInterpolant};
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::maps::{DomainKind, MapInstance};

/// Built-in functions on `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestFunction {
    Sqrt,
    /// `x^tau`
    PowTau(f64),
    /// `exp(2 pi i omega x)`
    ExpIOmega(f64),
    Constant(Complex64),
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> Complex64 {
        match *self {
            TestFunction::Sqrt => Complex64::new(x.sqrt(), 0.0),
            TestFunction::PowTau(tau) => Complex64::new(x.powf(tau), 0.0),
            TestFunction::ExpIOmega(omega) => {
                let (s, c) = (2.0 * PI * (omega * x).rem_euclid(1.0)).sin_cos();
                Complex64::new(c, s)
            }
            TestFunction::Constant(v) => v,
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Sqrt => f.write_str("sqrt"),
            TestFunction::PowTau(t) => write!(f, "xpow:{t}"),
            TestFunction::ExpIOmega(w) => write!(f, "expi:{w}"),
            TestFunction::Constant(v) if v.im == 0.0 && v.re == 1.0 => f.write_str("const"),
            TestFunction::Constant(v) if v.im == 0.0 => write!(f, "const:{}", v.re),
            TestFunction::Constant(v) => write!(f, "const:{}", v),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown function `{s}` (sqrt|xpow:TAU|expi:OMEGA|const)"));
        let param = |p: &str| p.parse::<f64>().map_err(|_| bad());
        match s.split_once(':') {
            None if s == "sqrt" => Ok(TestFunction::Sqrt),
            None if s == "const" => Ok(TestFunction::Constant(Complex64::new(1.0, 0.0))),
            Some(("xpow", t)) => {
                let tau = param(t)?;
                if !(tau > 0.0) || !tau.is_finite() {
                    return Err(domain("tau", tau, "(0, inf)"));
                }
                Ok(TestFunction::PowTau(tau))
            }
            Some(("expi", w)) => {
                let omega = param(w)?;
                if !omega.is_finite() {
                    return Err(domain("omega", omega, "finite reals"));
                }
                Ok(TestFunction::ExpIOmega(omega))
            }
            Some(("const", v)) => Ok(TestFunction::Constant(Complex64::new(param(v)?, 0.0))),
            _ => Err(bad()),
        }
    }
}

/// Map, truncation length `L` and interpolation degree `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransplantSpec {
    pub map: MapInstance,
    pub length: f64,
    pub degree: usize,
}

impl TransplantSpec {
    pub fn new(map: MapInstance, length: f64, degree: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(domain("L", length, "(0, inf)"));
        }
        Ok(TransplantSpec {
            map,
            length,
            degree,
        })
    }

    /// Image in `s` of the interpolation variable `y` in `[-1, 1]`.
    fn s_of_y(&self, y: f64) -> f64 {
        match self.map.domain() {
            DomainKind::SemiInfinite => self.length * (y - 1.0) / 2.0,
            DomainKind::Infinite => self.length * y,
        }
    }

    fn y_of_s(&self, s: f64) -> f64 {
        match self.map.domain() {
            DomainKind::SemiInfinite => 2.0 * s / self.length + 1.0,
            DomainKind::Infinite => s / self.length,
        }
    }
}

/// Which piece of the approximant a point falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    LeftTail,
    Core,
    RightTail,
}

#[derive(Clone, Debug)]
pub struct PiecewiseApproximant {
    spec: TransplantSpec,
    core: ChebInterpolant,
    x_left: f64,
    x_right: f64,
    tail_left: Complex64,
    tail_right: Option<Complex64>,
    node_x: Vec<f64>,
}

impl PiecewiseApproximant {
    /// Samples `f` at the images of the Chebyshev nodes and interpolates.
    pub fn build(f: &TestFunction, spec: TransplantSpec) -> Result<Self> {
        let grid = cheb_points(spec.degree);
        let node_x = grid
            .nodes()
            .iter()
            .map(|&y| spec.map.inverse(spec.s_of_y(y)))
            .collect::<Result<Vec<_>>>()?;
        let samples: Vec<Complex64> = node_x.iter().map(|&x| f.eval(x)).collect();
        let core = ChebInterpolant::interpolate(&samples)?;

        let x_left = spec.map.truncation_point(spec.length)?;
        let tail_left = f.eval(x_left);
        let (x_right, tail_right) = match spec.map.domain() {
            DomainKind::SemiInfinite => (1.0, None),
            DomainKind::Infinite => {
                let xr = spec.map.inverse(spec.length)?;
                (xr, Some(f.eval(xr)))
            }
        };
        for v in std::iter::once(tail_left).chain(tail_right) {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite(format!("tail value {v}")));
            }
        }
        Ok(PiecewiseApproximant {
            spec,
            core,
            x_left,
            x_right,
            tail_left,
            tail_right,
            node_x,
        })
    }

    pub fn spec(&self) -> &TransplantSpec {
        &self.spec
    }

    pub fn core(&self) -> &ChebInterpolant {
        &self.core
    }

    /// Left truncation point `x_L`. Zero when it underflows.
    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn tail_left(&self) -> Complex64 {
        self.tail_left
    }

    pub fn tail_right(&self) -> Option<Complex64> {
        self.tail_right
    }

    /// The points in `[0, 1]` where `f` was sampled, one per Chebyshev node.
    pub fn node_images(&self) -> &[f64] {
        &self.node_x
    }

    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        self.locate(x).map(|(_, v)| v)
    }

    /// Evaluates and reports which piece was used.
    pub fn locate(&self, x: f64) -> Result<(Region, Complex64)> {
        if !(0.0..=1.0).contains(&x) {
            return Err(domain("x", x, "[0, 1]"));
        }
        let semi = self.spec.map.domain() == DomainKind::SemiInfinite;
        if x == 0.0 || x < self.x_left {
            return Ok((Region::LeftTail, self.tail_left));
        }
        if semi && x == 1.0 {
            return Ok((Region::Core, self.core.evaluate_unchecked(1.0)));
        }
        if !semi && (x == 1.0 || x > self.x_right) {
            let v = self.tail_right.expect("infinite domain has a right tail");
            return Ok((Region::RightTail, v));
        }
        // x lies in [x_left, x_right], whose image is exactly [-1, 1]; the
        // forward map near x = 1 can still overshoot by far more than an ulp
        // because 1 - x is only known to absolute precision.
        let y = self.spec.y_of_s(self.spec.map.forward(x)?).clamp(-1.0, 1.0);
        Ok((Region::Core, self.core.evaluate_unchecked(y)))
    }
}

/// Default measurement grid size for degree `n`.
pub fn default_grid_size(n: usize) -> usize {
    2048.max(20 * n)
}

/// Sup-norm error with its split over the pieces of the approximant.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorReport {
    pub sup: f64,
    pub core: f64,
    pub left_tail: f64,
    pub right_tail: f64,
}

impl ErrorReport {
    fn single(region: Region, err: f64) -> Self {
        let mut r = ErrorReport {
            sup: err,
            ..Default::default()
        };
        match region {
            Region::LeftTail => r.left_tail = err,
            Region::Core => r.core = err,
            Region::RightTail => r.right_tail = err,
        }
        r
    }

    fn merge(self, other: Self) -> Self {
        ErrorReport {
            sup: self.sup.max(other.sup),
            core: self.core.max(other.core),
            left_tail: self.left_tail.max(other.left_tail),
            right_tail: self.right_tail.max(other.right_tail),
        }
    }
}

/// Composite grid on which the sup-norm is estimated: `grid_size` equispaced
/// points, `grid_size` geometric points on `[x_L/10, 10 x_L]` (mirrored about
/// `1/2` for the infinite families) and the node images.
pub fn measurement_points(p: &PiecewiseApproximant, grid_size: usize) -> Result<Vec<f64>> {
    if grid_size < 2 {
        return Err(Error::Invalid(format!("grid size {grid_size} < 2")));
    }
    let infinite = p.spec.map.domain() == DomainKind::Infinite;
    let last = (grid_size - 1) as f64;
    let mut pts: Vec<f64> = (0..grid_size).map(|i| i as f64 / last).collect();

    let lo = p.x_left / 10.0;
    let hi = (10.0 * p.x_left).min(1.0);
    if lo > 0.0 && hi > lo {
        let ratio = (hi / lo).ln();
        for i in 0..grid_size {
            let x = (lo * (ratio * i as f64 / last).exp()).min(1.0);
            if x > 0.0 && x < 1.0 {
                pts.push(x);
                if infinite {
                    pts.push(1.0 - x);
                }
            }
        }
    }
    pts.extend_from_slice(&p.node_x);
    Ok(pts)
}

fn pointwise_error(f: &TestFunction, p: &PiecewiseApproximant, x: f64) -> (Region, f64) {
    match p.locate(x) {
        Ok((region, v)) => {
            let e = (f.eval(x) - v).norm();
            (region, if e.is_nan() { f64::INFINITY } else { e })
        }
        Err(_) => (Region::Core, f64::INFINITY),
    }
}

/// Estimates `||f - p||_inf` over `[0, 1]` on [`measurement_points`].
pub fn sup_error(f: &TestFunction, p: &PiecewiseApproximant, grid_size: usize) -> Result<ErrorReport> {
    sup_error_with(f, p, grid_size, Execution::default())
}

pub fn sup_error_with(
    f: &TestFunction,
    p: &PiecewiseApproximant,
    grid_size: usize,
    exec: Execution,
) -> Result<ErrorReport> {
    let pts = measurement_points(p, grid_size)?;
    let report = exec.map_reduce(
        &pts,
        ErrorReport::default(),
        |&x| {
            let (region, e) = pointwise_error(f, p, x);
            ErrorReport::single(region, e)
        },
        ErrorReport::merge,
    );
    if !report.sup.is_finite() {
        return Err(Error::NonFinite(format!(
            "error of {f} against {} is not finite",
            p.spec.map
        )));
    }
    Ok(report)
}

/// Whether `sup_error(f, p, grid_size).sup >= threshold`, stopping at the
/// first grid point that reaches the threshold.
///
/// Points are visited in a strided order so that a large error anywhere on
/// `[0, 1]` is found after a handful of evaluations.
pub fn error_reaches(
    f: &TestFunction,
    p: &PiecewiseApproximant,
    grid_size: usize,
    threshold: f64,
    exec: Execution,
) -> Result<bool> {
    const STRIDE: usize = 61;
    let pts = measurement_points(p, grid_size)?;
    let ordered: Vec<f64> = (0..STRIDE)
        .flat_map(|offset| pts.iter().skip(offset).step_by(STRIDE).copied())
        .collect();
    Ok(exec.any(&ordered, |&x| pointwise_error(f, p, x).1 >= threshold))
}
