use std::path::PathBuf;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};
use vtmap::approximant::default_grid_size;
use vtmap::{sup_error, MapInstance, PiecewiseApproximant, TestFunction, TransplantSpec};

fn vtmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vtmap"))
        .args(args)
        .output()
        .expect("run vtmap")
}

fn stdout(args: &[&str]) -> String {
    let out = vtmap(args);
    assert!(
        out.status.success(),
        "vtmap {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[derive(Debug, Serialize, Deserialize)]
struct ApproxRow {
    x: f64,
    f_re: f64,
    f_im: f64,
    p_re: f64,
    p_im: f64,
    abs_err: f64,
}

fn approx_rows(csv_text: &str) -> Vec<ApproxRow> {
    csv::Reader::from_reader(csv_text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap()
}

fn max_err(rows: &[ApproxRow]) -> f64 {
    rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
}

#[test]
fn approx_max_error_is_the_sup_error() {
    let text = stdout(&["approx", "--map", "phi-e", "--L", "10", "--n", "32", "--fn", "sqrt"]);
    assert!(text.starts_with("x,f_re,f_im,p_re,p_im,abs_err\n"));
    let spec = TransplantSpec::new(MapInstance::phi_e(), 10.0, 32).unwrap();
    let p = PiecewiseApproximant::build(&TestFunction::Sqrt, spec).unwrap();
    let sup = sup_error(&TestFunction::Sqrt, &p, default_grid_size(32)).unwrap().sup;
    assert_eq!(max_err(&approx_rows(&text)), sup);
}

#[test]
fn approx_rows_are_sorted_and_round_trip() {
    let text = stdout(&["approx", "--map", "psi-s", "--alpha", "0.4", "--L", "1.1", "--n", "50", "--fn", "expi:15"]);
    let rows = approx_rows(&text);
    assert!(rows.windows(2).all(|w| w[0].x < w[1].x));
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).unwrap();
    }
    assert_eq!(String::from_utf8(w.into_inner().unwrap()).unwrap(), text);
}

#[test]
fn phi_s_square_root_at_degree_200() {
    // With L = 1.8 and alpha shrinking as 1/sqrt(n) the error is far below 1e-6.
    let alpha = (1.0 / 200f64.sqrt()).to_string();
    let text = stdout(&["approx", "--map", "phi-s", "--alpha", &alpha, "--L", "1.8", "--n", "200"]);
    assert!(max_err(&approx_rows(&text)) < 1e-6);

    // With alpha held at 1 the truncated left tail alone costs sqrt(x_L).
    let text = stdout(&["approx", "--map", "phi-s", "--alpha", "1", "--L", "1.8", "--n", "200"]);
    let x_l = MapInstance::phi_s(1.0).unwrap().truncation_point(1.8).unwrap();
    let err = max_err(&approx_rows(&text));
    assert!(err >= 0.99 * x_l.sqrt() && err > 0.1, "{err}");
}

#[test]
fn exit_codes() {
    let out = vtmap(&["approx", "--map", "psi-s", "--alpha", "0.004", "--L", "1", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("floor"));

    assert_eq!(vtmap(&["--help"]).status.code(), Some(0));
    assert_eq!(vtmap(&["approx", "--bogus"]).status.code(), Some(1));
    assert_eq!(vtmap(&["converge", "--map", "phi-e", "--regime", "grow-l", "--n", "10"]).status.code(), Some(1));
    assert_eq!(vtmap(&["predict", "--map", "phi-e", "--regime", "fixed-l", "--alpha0", "1", "--L0", "1"]).status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_vtmap"))
        .args(["predict", "--map", "phi-e", "--regime", "grow-l", "--c", "0.15", "--tau", "0.5"])
        .env("VTMAP_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn converge_records_and_envelope() {
    let env = scratch("envelope.csv");
    let svg = scratch("converge.svg");
    let text = stdout(&[
        "converge", "--map", "psi-s", "--regime", "fixed-l", "--alpha0", "1.1", "--L0", "0.8",
        "--n", "20:20:100", "--fn", "expi:10", "--tau", "0.5", "--beta", "inf",
        "--envelope", env.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("map,regime,n,alpha,L,function,error,predicted_n"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("psi-s,fixed-l,20,"));
    assert!(rows.iter().all(|r| r.contains(",1.3,expi:10,")));
    let envelope = std::fs::read_to_string(&env).unwrap();
    assert!(envelope.starts_with("n,envelope\n20,"));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[derive(Debug, Deserialize)]
struct ResolveRow {
    omega: f64,
    #[serde(rename = "measured_R")]
    measured: Option<usize>,
}

fn resolved(n: &str) -> Vec<ResolveRow> {
    let text = stdout(&[
        "resolve", "--map", "phi-s", "--regime", "fixed-l", "--alpha0", "0.7", "--L0", "0.2",
        "--omega", "30,10,20", "--n", n,
    ]);
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap()
}

#[test]
fn resolve_refinement_never_raises_the_crossing() {
    let coarse = resolved("12:12:240");
    let fine = resolved("4:4:240");
    assert_eq!(coarse.iter().map(|r| r.omega).collect::<Vec<_>>(), [10.0, 20.0, 30.0]);
    for (c, f) in coarse.iter().zip(&fine) {
        let (c, f) = (c.measured.unwrap(), f.measured.unwrap());
        assert!(f <= c, "fine {f} > coarse {c}");
    }
}

#[test]
fn unresolved_omega_leaves_the_column_empty() {
    let out = vtmap(&[
        "resolve", "--map", "phi-s", "--regime", "fixed-l", "--alpha0", "0.7", "--L0", "0.2",
        "--omega", "100", "--n", "10:10:50",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("100.0,,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not resolved"));
}

#[test]
fn predict_reports_the_resolution_constant() {
    let out = scratch("predict.csv");
    let text = stdout(&[
        "predict", "--map", "phi-s", "--regime", "fixed-l", "--alpha0", "0.7", "--L0", "0.2",
        "--tau", "0.5", "--out", out.to_str().unwrap(),
    ]);
    assert!(text.contains("(1 + L0) pi"));
    let csv_text = std::fs::read_to_string(&out).unwrap();
    let row = csv_text.lines().nth(1).unwrap();
    let coeff: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
    assert!((coeff - 1.2 * std::f64::consts::PI).abs() < 1e-12);
}
