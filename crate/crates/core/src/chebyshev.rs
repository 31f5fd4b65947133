//! Chebyshev interpolation at points of the second kind.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{domain, Error, Result};

/// Below this degree coefficients are computed by direct summation.
const DIRECT_SUM_CUTOFF: usize = 16;

/// Evaluation accepts `|y| <= 1 + EVAL_SLACK` and clamps onto `[-1, 1]`.
pub const EVAL_SLACK: f64 = 1e-14;

/// Chebyshev points of the second kind, `y_j = cos(j pi / n)`, ordered from
/// `1` down to `-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebGrid {
    nodes: Vec<f64>,
}

impl ChebGrid {
    pub fn new(n: usize) -> Self {
        if n == 0 {
            return ChebGrid { nodes: vec![1.0] };
        }
        // sin form gives exact antisymmetry about the middle node.
        let nodes = (0..=n)
            .map(|j| {
                let k = n as f64 - 2.0 * j as f64;
                (PI * k / (2.0 * n as f64)).sin()
            })
            .collect();
        ChebGrid { nodes }
    }

    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

/// Shorthand for [`ChebGrid::new`].
pub fn cheb_points(n: usize) -> ChebGrid {
    ChebGrid::new(n)
}

/// Degree-`n` interpolant stored through its aliased Chebyshev coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebInterpolant {
    coeffs: Vec<Complex64>,
}

impl ChebInterpolant {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidLength {
                expected: 1,
                got: 0,
            });
        }
        Ok(ChebInterpolant { coeffs })
    }

    /// Interpolates samples taken at `cheb_points(samples.len() - 1)`.
    pub fn interpolate(samples: &[Complex64]) -> Result<Self> {
        validate_samples(samples)?;
        let n = samples.len() - 1;
        let mut coeffs = if n < DIRECT_SUM_CUTOFF {
            coeffs_direct(samples)
        } else {
            coeffs_dct(samples)
        };
        if samples.iter().all(|v| v.im == 0.0) {
            coeffs.iter_mut().for_each(|c| c.im = 0.0);
        }
        Ok(ChebInterpolant { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Evaluates the interpolant by Clenshaw's recurrence.
    pub fn evaluate(&self, y: f64) -> Result<Complex64> {
        if !(y.abs() <= 1.0 + EVAL_SLACK) {
            return Err(domain("y", y, "[-1, 1]"));
        }
        Ok(self.evaluate_unchecked(y.clamp(-1.0, 1.0)))
    }

    pub(crate) fn evaluate_unchecked(&self, y: f64) -> Complex64 {
        let c = &self.coeffs;
        if c.len() == 1 {
            return c[0];
        }
        let two_y = 2.0 * y;
        let (mut b1r, mut b1i, mut b2r, mut b2i) = (0.0, 0.0, 0.0, 0.0);
        for ck in c[1..].iter().rev() {
            let br = ck.re + two_y * b1r - b2r;
            let bi = ck.im + two_y * b1i - b2i;
            b2r = b1r;
            b2i = b1i;
            b1r = br;
            b1i = bi;
        }
        Complex64::new(c[0].re + y * b1r - b2r, c[0].im + y * b1i - b2i)
    }
}

fn validate_samples(samples: &[Complex64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::InvalidLength {
            expected: 1,
            got: 0,
        });
    }
    if let Some((j, v)) = samples
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::NonFinite(format!("sample {j} is {v}")));
    }
    Ok(())
}

/// `c_k = (2/n) sum'' v_j cos(j k pi / n)`, halved again for `k = 0, n`.
pub(crate) fn coeffs_direct(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len() - 1;
    if n == 0 {
        return vec![samples[0]];
    }
    let period = 2 * n;
    let table: Vec<f64> = (0..period)
        .map(|m| (PI * m as f64 / n as f64).cos())
        .collect();
    (0..=n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, v) in samples.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                acc += v * (w * table[(j * k) % period]);
            }
            let scale = if k == 0 || k == n { 1.0 } else { 2.0 };
            acc * (scale / n as f64)
        })
        .collect()
}

/// Type-I DCT through a complex FFT of the even extension of length `2n`.
pub(crate) fn coeffs_dct(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len() - 1;
    if n == 0 {
        return vec![samples[0]];
    }
    let mut buf: Vec<Complex64> = samples
        .iter()
        .copied()
        .chain(samples[1..n].iter().rev().copied())
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(2 * n).process(&mut buf);
    // The sine parts cancel by symmetry, so the real and imaginary transforms
    // are the real and imaginary parts of the even-extension DFT up to
    // roundoff, which is the same order as the DCT's own.
    buf.truncate(n + 1);
    let inv_n = 1.0 / n as f64;
    for (k, c) in buf.iter_mut().enumerate() {
        let scale = if k == 0 || k == n { 0.5 * inv_n } else { inv_n };
        *c *= scale;
    }
    buf
}

/// Parameter `mu > 0` of the Bernstein ellipse with foci `-1` and `1` and
/// semi-axes `cosh mu`, `sinh mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernsteinEllipse {
    mu: f64,
}

impl BernsteinEllipse {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(domain("mu", mu, "(0, inf)"));
        }
        Ok(BernsteinEllipse { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn semi_major(&self) -> f64 {
        self.mu.cosh()
    }

    pub fn semi_minor(&self) -> f64 {
        self.mu.sinh()
    }

    /// The point `cos t cosh mu + i sin t sinh mu`.
    pub fn point(&self, theta: f64) -> Complex64 {
        Complex64::new(theta.cos() * self.mu.cosh(), theta.sin() * self.mu.sinh())
    }
}

/// Bernstein's bound `(4/mu) m exp(-mu n)` on the interpolation error of a
/// function analytic inside `E_mu` and bounded there by `m`.
pub fn bernstein_bound(mu: f64, m: f64, n: usize) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(domain("mu", mu, "(0, inf)"));
    }
    if !(m > 0.0) {
        return Err(domain("m", m, "(0, inf)"));
    }
    Ok(4.0 / mu * m * (-mu * n as f64).exp())
}

/// The Bernstein ellipse passing through `y1 + i y2`.
pub fn ellipse_param(y1: f64, y2: f64) -> Result<BernsteinEllipse> {
    if !(y1.is_finite() && y2.is_finite()) {
        return Err(Error::DegeneratePoint { y1, y2 });
    }
    let r2 = y1 * y1 + y2 * y2;
    let disc = ((1.0 - r2).powi(2) + 4.0 * y2 * y2).sqrt();
    // Both branches equal the same quantity; the second avoids cancellation
    // when r2 < 1.
    let sinh2 = if r2 >= 1.0 {
        0.5 * (r2 - 1.0 + disc)
    } else {
        2.0 * y2 * y2 / (1.0 - r2 + disc)
    };
    if !(sinh2 > 0.0) {
        return Err(Error::DegeneratePoint { y1, y2 });
    }
    BernsteinEllipse::new(sinh2.sqrt().asinh())
}
