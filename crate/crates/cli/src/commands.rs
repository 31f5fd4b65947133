use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use vtmap::approximant::{default_grid_size, measurement_points};
use vtmap::resolution::{default_n_grid, measure_resolution_with};
use vtmap::sweep::convergence_sweep;
use vtmap::{
    predict_ppw, predicted_c, AnalyticityProfile, DomainKind, Execution, MapFamily, MapInstance,
    ParameterRegime, PiecewiseApproximant, PpwPrediction, Resolution, ResolutionQuery, Scheme,
    TransplantSpec,
};

use crate::svg::{line_plot, Series};
use crate::{ApproxArgs, ConvergeArgs, PredictArgs, ProfileArgs, RegimeKind, ResolveArgs, SchemeArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] vtmap::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use vtmap::Error as E;
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(E::IncompatibleRegime { .. } | E::MissingProfileField(_)) => 1,
            CliError::Numeric(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_at(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn io_at(p: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", p.display()))
}

fn write_csv<T: Serialize>(path: &Option<PathBuf>, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_at(path, e))
}

fn need(v: Option<f64>, flag: &str, regime: &str) -> Result<f64> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --regime {regime}")))
}

impl SchemeArgs {
    fn regime(&self) -> Result<ParameterRegime> {
        Ok(match self.regime {
            RegimeKind::GrowL => {
                if self.map.is_parameterised() && self.alpha.is_none() {
                    return Err(CliError::Usage(format!("--alpha is required for --map {}", self.map)));
                }
                ParameterRegime::FixedAlphaGrowingL {
                    alpha: self.alpha,
                    c: need(self.c, "c", "grow-l")?,
                    exponent: None,
                }
            }
            RegimeKind::FixedL => ParameterRegime::FixedLShrinkingAlpha {
                alpha0: need(self.alpha0, "alpha0", "fixed-l")?,
                l0: need(self.l0, "L0", "fixed-l")?,
            },
            RegimeKind::Tolerance => ParameterRegime::ToleranceDriven {
                sigma: need(self.sigma, "sigma", "tolerance")?,
                p: need(self.p, "p", "tolerance")?,
                epsilon: need(self.epsilon, "epsilon", "tolerance")?,
            },
        })
    }

    fn scheme(&self) -> Result<Scheme> {
        Ok(Scheme::new(self.map, self.regime()?)?)
    }
}

impl ProfileArgs {
    fn profile(&self) -> Result<AnalyticityProfile> {
        Ok(AnalyticityProfile::new(self.d, self.tau, self.beta)?)
    }

    fn given(&self) -> bool {
        self.tau.is_some() || self.d.is_some() || self.beta.is_some()
    }
}

#[derive(Serialize)]
struct ApproxRow {
    x: f64,
    f_re: f64,
    f_im: f64,
    p_re: f64,
    p_im: f64,
    abs_err: f64,
}

pub fn approx(a: ApproxArgs) -> Result<()> {
    let map = MapInstance::new(a.map, if a.map.is_parameterised() { a.alpha } else { None })?;
    let spec = TransplantSpec::new(map, a.length, a.n)?;
    let p = PiecewiseApproximant::build(&a.function, spec)?;
    let mut xs = measurement_points(&p, a.grid_size.unwrap_or_else(|| default_grid_size(a.n)))?;
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let rows = xs
        .into_iter()
        .map(|x| {
            let f = a.function.eval(x);
            let v = p.evaluate(x)?;
            Ok(ApproxRow {
                x,
                f_re: f.re,
                f_im: f.im,
                p_re: v.re,
                p_im: v.im,
                abs_err: (f - v).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    write_csv(&a.out, &rows)
}

#[derive(Serialize)]
struct RunRecord {
    map: String,
    regime: String,
    n: usize,
    alpha: Option<f64>,
    #[serde(rename = "L")]
    length: f64,
    function: String,
    error: f64,
    predicted_n: Option<f64>,
}

#[derive(Serialize)]
struct EnvelopeRow {
    n: usize,
    envelope: f64,
}

pub fn converge(a: ConvergeArgs) -> Result<()> {
    let scheme = a.scheme.scheme()?;
    let envelope = if a.envelope.is_some() || a.profile.given() {
        Some(predicted_c(&scheme.regime, scheme.family, &a.profile.profile()?)?)
    } else {
        None
    };
    let predicted_n = match a.function {
        vtmap::TestFunction::ExpIOmega(w) => Some(predict_ppw(scheme.family, &scheme.regime)?.predicted_n(w)),
        _ => None,
    };
    let points = convergence_sweep(&scheme, &a.function, &a.n.0, a.grid_size, Execution::Parallel)?;
    let rows: Vec<RunRecord> = points
        .iter()
        .map(|p| RunRecord {
            map: scheme.family.to_string(),
            regime: scheme.regime.tag().to_string(),
            n: p.n,
            alpha: p.alpha,
            length: p.length,
            function: a.function.to_string(),
            error: p.error,
            predicted_n,
        })
        .collect();
    write_csv(&a.out, &rows)?;

    let env_rows: Vec<EnvelopeRow> = match envelope {
        Some(c) => points
            .iter()
            .map(|p| EnvelopeRow {
                n: p.n,
                envelope: c.envelope(p.n),
            })
            .collect(),
        None => Vec::new(),
    };
    if let Some(path) = &a.envelope {
        write_csv(&Some(path.clone()), &env_rows)?;
    }
    if let Some(path) = &a.svg {
        let mut series = vec![Series {
            label: format!("{} {}", scheme.family, a.function),
            points: points.iter().map(|p| (p.n as f64, p.error)).collect(),
            dashed: false,
        }];
        if !env_rows.is_empty() {
            series.push(Series {
                label: "predicted".into(),
                points: env_rows.iter().map(|r| (r.n as f64, r.envelope)).collect(),
                dashed: true,
            });
        }
        write_file(path, &line_plot("n", "error", &series, true))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ResolveRow {
    omega: f64,
    #[serde(rename = "measured_R")]
    measured: Option<usize>,
    predicted_n: f64,
    grid_step: Option<usize>,
}

fn resolve_one(
    omega: f64,
    a: &ResolveArgs,
    scheme: Scheme,
    pred: &PpwPrediction,
    exec: Execution,
) -> Result<(ResolveRow, usize)> {
    let predicted_n = pred.predicted_n(omega);
    let grid = match &a.n {
        Some(r) => r.0.clone(),
        None => default_n_grid(predicted_n),
    };
    let last = *grid.last().expect("grids are nonempty");
    let mut q = ResolutionQuery::new(omega, a.delta, grid, scheme)?;
    if let Some(g) = a.grid_size {
        q = q.with_grid_size(g);
    }
    let (measured, grid_step) = match measure_resolution_with(&q, exec)? {
        Resolution::Resolved { n, step } => (Some(n), Some(step)),
        Resolution::NotResolved => (None, None),
    };
    Ok((
        ResolveRow {
            omega,
            measured,
            predicted_n,
            grid_step,
        },
        last,
    ))
}

pub fn resolve(a: ResolveArgs) -> Result<()> {
    let scheme = a.scheme.scheme()?;
    let pred = predict_ppw(scheme.family, &scheme.regime)?;
    let mut omegas = a.omega.0.clone();
    omegas.sort_by(f64::total_cmp);
    omegas.dedup();

    let results: Vec<Result<(ResolveRow, usize)>> = if omegas.len() > 1 {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            omegas
                .par_iter()
                .map(|&w| resolve_one(w, &a, scheme, &pred, Execution::Sequential))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            omegas
                .iter()
                .map(|&w| resolve_one(w, &a, scheme, &pred, Execution::Sequential))
                .collect()
        }
    } else {
        omegas
            .iter()
            .map(|&w| resolve_one(w, &a, scheme, &pred, Execution::Parallel))
            .collect()
    };
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        let (row, last) = r?;
        if row.measured.is_none() {
            eprintln!(
                "warning: omega = {} not resolved to {} by n = {last}",
                row.omega, a.delta
            );
        }
        rows.push(row);
    }
    write_csv(&a.out, &rows)?;
    if let Some(path) = &a.svg {
        let series = [
            Series {
                label: "measured".into(),
                points: rows
                    .iter()
                    .filter_map(|r| r.measured.map(|n| (r.omega, n as f64)))
                    .collect(),
                dashed: false,
            },
            Series {
                label: "predicted".into(),
                points: rows.iter().map(|r| (r.omega, r.predicted_n)).collect(),
                dashed: true,
            },
        ];
        write_file(path, &line_plot("omega", "n", &series, false))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PredictRow {
    map: String,
    regime: String,
    #[serde(rename = "C")]
    base: f64,
    index: f64,
    clamped: bool,
    ppw_coefficient: f64,
    power: f64,
    r: f64,
    xi_r: Option<f64>,
    b_alpha: Option<f64>,
}

fn schedule_text(family: MapFamily, regime: &ParameterRegime) -> String {
    let semi = family.domain() == DomainKind::SemiInfinite;
    match *regime {
        ParameterRegime::FixedAlphaGrowingL { alpha, c, .. } => {
            let growth = if semi { "n^(2/3)" } else { "n^(1/2)" };
            match alpha.filter(|_| family.is_parameterised()) {
                Some(a) => format!("alpha = {a} fixed, L = {c} {growth}"),
                None => format!("L = {c} {growth}"),
            }
        }
        ParameterRegime::FixedLShrinkingAlpha { alpha0, l0 } => {
            let base = if semi { 1.0 } else { 0.5 };
            format!("alpha = {alpha0}/sqrt(n), L = {base} + {l0} = {}", base + l0)
        }
        ParameterRegime::ToleranceDriven { sigma, p, epsilon } => {
            let l = if semi {
                format!("L = 1 + {sigma}^2 n^(2p-2)")
            } else {
                format!("L = sqrt(1/4 + {sigma}^2 n^(2p-2))")
            };
            format!("alpha = {sigma} |log {epsilon:e}| n^({p}-2), {l}")
        }
    }
}

fn r_text(family: MapFamily, regime: &ParameterRegime, pred: &PpwPrediction) -> String {
    match *regime {
        ParameterRegime::FixedAlphaGrowingL { .. } => "inf".into(),
        ParameterRegime::FixedLShrinkingAlpha { l0, .. } => match family {
            MapFamily::PhiS => format!("(1 + L0) pi = (1 + {l0}) pi = {:.4}", pred.coefficient),
            _ => format!("(1 + 2 L0) pi = (1 + 2*{l0}) pi = {:.4}", pred.coefficient),
        },
        ParameterRegime::ToleranceDriven { .. } => format!("pi = {:.4}", pred.coefficient),
    }
}

pub fn predict(a: PredictArgs) -> Result<()> {
    let scheme = a.scheme.scheme()?;
    let (family, regime) = (scheme.family, scheme.regime);
    let c = predicted_c(&regime, family, &a.profile.profile()?)?;
    let pred = predict_ppw(family, &regime)?;
    let r = if pred.power == 1.0 { pred.coefficient } else { f64::INFINITY };

    let mut text = String::new();
    text.push_str(&format!("map {family}, regime {}\n", regime.tag()));
    text.push_str(&format!("  schedule:    {}\n", schedule_text(family, &regime)));
    text.push_str(&format!(
        "  convergence: error = O(C^(-n^{:.4})), C = {:.6}{}\n",
        c.index,
        c.base,
        if c.clamped { " (analyticity parameter clamped to the map's cap)" } else { "" }
    ));
    let dof = if pred.power == 1.0 {
        format!("{:.4} omega", pred.coefficient)
    } else {
        format!("{:.4} omega^{}", pred.coefficient, pred.power)
    };
    text.push_str(&format!("  d.o.f.:      n = {dof}\n"));
    text.push_str(&format!("  r:           {}\n", r_text(family, &regime, &pred)));
    if let Some(x) = pred.xi_r {
        text.push_str(&format!("  xi_r:        {x:.6}\n"));
    }
    if let Some(b) = pred.b_alpha {
        text.push_str(&format!("  B(alpha):    {b:.6}\n"));
    }

    let row = PredictRow {
        map: family.to_string(),
        regime: regime.tag().to_string(),
        base: c.base,
        index: c.index,
        clamped: c.clamped,
        ppw_coefficient: pred.coefficient,
        power: pred.power,
        r,
        xi_r: pred.xi_r,
        b_alpha: pred.b_alpha,
    };
    match &a.out {
        Some(_) => {
            print!("{text}");
            write_csv(&a.out, &[row])
        }
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{text}")?;
            drop(out);
            write_csv(&None, &[row])
        }
    }
}
