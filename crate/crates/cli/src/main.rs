//! `vtmap`: build approximants, run convergence and resolution sweeps, and
//! print predicted rates. Output is CSV.

mod commands;
mod range;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vtmap::{MapFamily, TestFunction};

use range::{parse_epsilon, parse_extended, NRange, RealList};

#[derive(Parser, Debug)]
#[command(name = "vtmap", version, about = "Variable-transform Chebyshev approximation harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one approximant and tabulate f, p and |f - p| on the error grid.
    Approx(ApproxArgs),
    /// Sup error against n under a parameter schedule.
    Converge(ConvergeArgs),
    /// Measured and predicted delta-resolution for each omega.
    Resolve(ResolveArgs),
    /// Predicted convergence base and resolution law for a scheme.
    Predict(PredictArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RegimeKind {
    GrowL,
    FixedL,
    Tolerance,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    /// phi-e, phi-s, psi-e or psi-s.
    #[arg(long)]
    map: MapFamily,
    #[arg(long, value_enum)]
    regime: RegimeKind,
    /// Strip half-width (grow-l with phi-s/psi-s).
    #[arg(long)]
    alpha: Option<f64>,
    /// L = c n^(2/3) or c n^(1/2) (grow-l).
    #[arg(long)]
    c: Option<f64>,
    /// alpha = alpha0 / sqrt(n) (fixed-l).
    #[arg(long)]
    alpha0: Option<f64>,
    /// L = 1 + L0 or 1/2 + L0 (fixed-l).
    #[arg(long = "L0")]
    l0: Option<f64>,
    /// Tolerance-driven schedule parameters.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Target accuracy; accepts `2^-52`.
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: Option<f64>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    /// Hölder exponent at the endpoint(s); `inf` for none.
    #[arg(long, value_parser = parse_extended)]
    tau: Option<f64>,
    /// Parabolic-region parameter; `inf` to take the map's cap.
    #[arg(long, value_parser = parse_extended)]
    d: Option<f64>,
    /// Strip half-width of analyticity; `inf` to take the map's cap.
    #[arg(long, value_parser = parse_extended)]
    beta: Option<f64>,
}

#[derive(Args, Debug)]
struct ApproxArgs {
    #[arg(long)]
    map: MapFamily,
    #[arg(long)]
    alpha: Option<f64>,
    /// Truncation length.
    #[arg(long = "L")]
    length: f64,
    /// Interpolation degree.
    #[arg(long)]
    n: usize,
    /// sqrt, xpow:TAU, expi:OMEGA, const or const:V.
    #[arg(long = "fn", default_value = "sqrt")]
    function: TestFunction,
    #[arg(long)]
    grid_size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    #[command(flatten)]
    profile: ProfileArgs,
    /// Degrees as START:STEP:STOP.
    #[arg(long)]
    n: NRange,
    #[arg(long = "fn", default_value = "sqrt")]
    function: TestFunction,
    #[arg(long)]
    grid_size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the predicted envelope C^(-n^index); needs the profile flags.
    #[arg(long)]
    envelope: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ResolveArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Frequencies as START:STEP:STOP or a comma list.
    #[arg(long)]
    omega: RealList,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Degrees to scan; defaults to steps of predicted_n/200 up to 3 predicted_n.
    #[arg(long)]
    n: Option<NRange>,
    #[arg(long)]
    grid_size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    #[command(flatten)]
    profile: ProfileArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), commands::CliError> {
    let Ok(v) = std::env::var("VTMAP_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .map_err(|_| commands::CliError::Usage(format!("VTMAP_THREADS=`{v}` is not a thread count")))?;
    #[cfg(feature = "parallel")]
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| commands::CliError::Usage(e.to_string()))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Approx(a) => commands::approx(a),
        Command::Converge(a) => commands::converge(a),
        Command::Resolve(a) => commands::resolve(a),
        Command::Predict(a) => commands::predict(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
