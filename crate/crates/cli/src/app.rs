use std::ffi::OsString;
use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use framecurv::classify::DEFAULT_TOLERANCE;
use framecurv::{classify, rel_deviation, simplify, Curvature64, Error, Method, Sampling};
use serde::Serialize;

use crate::input::{parse_point, read_input, InputError, ManifoldInput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "framecurv", version, about = "Sectional curvature of 2D frames with constant metric pairings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate K on a grid (or at --at) by one or all methods
    Compute(Options),
    /// Compare closed form, pipeline and coordinate oracle at random points
    Check(Options),
    /// Decide whether K is constant and name the model space
    Classify(Options),
    /// Print the simplified symbolic K
    Simplify(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Manifold description (JSON)
    #[arg(short = 'i', long = "input", value_name = "FILE")]
    pub input: String,
    /// closed, pipeline, oracle, orthonormal, orthogonal, orthogonal-a11 or all
    #[arg(long)]
    pub method: Option<MethodChoice>,
    /// Points per axis of the evaluation grid
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    /// Number of random sample points
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Single evaluation point, e.g. "phi=1,theta=0.5"
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    All,
    One(Method),
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(MethodChoice::All)
        } else {
            s.parse().map(MethodChoice::One)
        }
    }
}

/// Exit code, the JSON report for stdout and notes for stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    point: Option<[f64; 2]>,
}

impl Failure {
    fn input(message: impl fmt::Display) -> Self {
        Failure { code: EXIT_INPUT, kind: "input", message: message.to_string(), point: None }
    }

    /// Errors raised while building a curvature field: only domain errors are numeric.
    fn building(e: Error) -> Self {
        match e {
            Error::Domain { point, .. } => Failure::numeric_at(e.to_string(), Some(point)),
            Error::SingularFrame { point, .. } => Failure { point, ..Failure::input(e) },
            other => Failure::input(other),
        }
    }

    /// Errors raised while evaluating at a concrete point.
    fn evaluating(e: Error) -> Self {
        let point = match &e {
            Error::Domain { point, .. } => Some(*point),
            Error::SingularFrame { point, .. } => *point,
            _ => None,
        };
        Failure::numeric_at(e.to_string(), point)
    }

    fn numeric_at(message: String, point: Option<[f64; 2]>) -> Self {
        Failure { code: EXIT_DOMAIN, kind: "domain", message, point }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::input(e)
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ErrorReport<'a> {
    error: &'a str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<[f64; 2]>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MethodValues {
    method: &'static str,
    values: Vec<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ComputeReport {
    vars: [String; 2],
    points: Vec<[f64; 2]>,
    results: Vec<MethodValues>,
    agreement: f64,
    diagnostics: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MethodSummary {
    method: &'static str,
    min: f64,
    max: f64,
    mean: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckReport {
    passed: bool,
    agreement: f64,
    tol: f64,
    samples: usize,
    worst_point: [f64; 2],
    results: Vec<MethodSummary>,
    diagnostics: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassifyReport {
    kind: &'static str,
    k_value: Option<f64>,
    spread: f64,
    lorentzian: bool,
    method: &'static str,
    samples: usize,
    tol: f64,
    diagnostics: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimplifyReport {
    method: &'static str,
    expression: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    diagnostics: Vec<String>,
}

fn to_json<S: Serialize>(report: &S) -> String {
    serde_json::to_string(report).expect("reports contain only finite numbers")
}

/// Parses the command line and runs it. Argument errors exit with 1, not clap's 2.
pub fn run<I, A>(args: I) -> Outcome
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, report: text, notes: Vec::new() }
            } else {
                let report = to_json(&ErrorReport { error: "input", message: text.trim_end(), point: None });
                Outcome { code, report, notes: vec![text] }
            }
        }
    }
}

pub fn execute(command: &Command) -> Outcome {
    let mut notes = Vec::new();
    let result = match command {
        Command::Compute(o) => compute(o, &mut notes),
        Command::Check(o) => check(o, &mut notes),
        Command::Classify(o) => classify_cmd(o, &mut notes),
        Command::Simplify(o) => simplify_cmd(o, &mut notes),
    };
    match result {
        Ok((code, report)) => Outcome { code, report, notes },
        Err(f) => {
            notes.push(format!("error: {}", f.message));
            let report = to_json(&ErrorReport { error: f.kind, message: &f.message, point: f.point });
            Outcome { code: f.code, report, notes }
        }
    }
}

struct Setup {
    input: ManifoldInput,
    sampling: Sampling,
    at: Option<[f64; 2]>,
}

fn setup(o: &Options) -> Result<Setup, Failure> {
    if o.grid < 2 {
        return Err(Failure::input(format!("--grid: need at least 2 points per axis, got {}", o.grid)));
    }
    if !(o.tol.is_finite() && o.tol > 0.0) {
        return Err(Failure::input(format!("--tol: must be positive and finite, got {}", o.tol)));
    }
    let input = read_input(&o.input)?;
    let at = o.at.as_deref().map(|s| parse_point(s, input.vars())).transpose()?;
    let sampling = Sampling { grid: o.grid, random: o.samples, seed: o.seed };
    Ok(Setup { input, sampling, at })
}

fn build(method: Method, s: &Setup) -> Result<Curvature64, Failure> {
    Curvature64::build(method, &s.input.frame, &s.input.metric, &s.sampling).map_err(Failure::building)
}

fn values(k: &Curvature64, points: &[[f64; 2]]) -> Result<Vec<f64>, Failure> {
    points.iter().map(|p| k.at(p).map(|v| v + 0.0).map_err(Failure::evaluating)).collect()
}

fn a11_variant_warning(s: &Setup) -> String {
    format!(
        "orthogonal-a11 divides by a11 only and differs from the closed form by the factor a22 = {}; it is left out of `agreement`",
        s.input.metric.a22
    )
}

/// Largest pairwise `rel_deviation` across rows, and the index of the point where it occurs.
fn agreement(rows: &[&[f64]]) -> (f64, usize) {
    let n = rows.first().map_or(0, |r| r.len());
    let mut worst = (0.0, 0);
    for p in 0..n {
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[i + 1..] {
                let d = rel_deviation(a[p], b[p]);
                if d > worst.0 {
                    worst = (d, p);
                }
            }
        }
    }
    worst
}

fn compute(o: &Options, notes: &mut Vec<String>) -> Result<(i32, String), Failure> {
    let s = setup(o)?;
    let methods: Vec<Method> = match o.method.unwrap_or(MethodChoice::All) {
        MethodChoice::One(m) => vec![m],
        MethodChoice::All => Method::ALL.into_iter().filter(|m| m.applies_to(&s.input.metric)).collect(),
    };
    let mut diagnostics = Vec::new();
    if methods.len() < Method::ALL.len() && o.method.is_none() {
        let skipped: Vec<_> = Method::ALL.iter().filter(|m| !methods.contains(m)).map(|m| m.name()).collect();
        notes.push(format!("skipped methods that do not apply to these constants: {}", skipped.join(", ")));
    }
    if methods.contains(&Method::OrthogonalA11) {
        diagnostics.push(a11_variant_warning(&s));
    }
    let points = match s.at {
        Some(p) => vec![p],
        None => s.input.frame.chart.grid_points(o.grid),
    };
    let mut results = Vec::new();
    for &m in &methods {
        let k = build(m, &s)?;
        results.push(MethodValues { method: m.name(), values: values(&k, &points)? });
    }
    let compared: Vec<&[f64]> =
        results.iter().filter(|r| r.method != Method::OrthogonalA11.name()).map(|r| r.values.as_slice()).collect();
    let agreement = agreement(&compared).0;
    let report = ComputeReport { vars: s.input.vars().clone(), points, results, agreement, diagnostics };
    Ok((EXIT_OK, to_json(&report)))
}

fn check(o: &Options, notes: &mut Vec<String>) -> Result<(i32, String), Failure> {
    let s = setup(o)?;
    if o.method.is_some() {
        notes.push("check always compares closed, pipeline and oracle; --method ignored".into());
    }
    let mut points = s.input.frame.chart.random_points(o.samples, o.seed);
    points.extend(s.at);
    if points.is_empty() {
        return Err(Failure::input("--samples: nothing to check"));
    }
    let mut summaries = Vec::new();
    let mut rows = Vec::new();
    for m in [Method::Closed, Method::Pipeline, Method::Oracle] {
        let v = values(&build(m, &s)?, &points)?;
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        summaries.push(MethodSummary { method: m.name(), min, max, mean });
        rows.push(v);
    }
    let (agreement, worst) = agreement(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>());
    let passed = agreement <= o.tol;
    if !passed {
        notes.push(format!("methods disagree by {agreement:e} > {:e} at {:?}", o.tol, points[worst]));
    }
    let report = CheckReport {
        passed,
        agreement,
        tol: o.tol,
        samples: points.len(),
        worst_point: points[worst],
        results: summaries,
        diagnostics: Vec::new(),
    };
    Ok((if passed { EXIT_OK } else { EXIT_CHECK }, to_json(&report)))
}

fn single_method(o: &Options) -> Result<Method, Failure> {
    match o.method.unwrap_or(MethodChoice::One(Method::Closed)) {
        MethodChoice::One(m) => Ok(m),
        MethodChoice::All => Err(Failure::input("--method: `all` is only meaningful for compute")),
    }
}

fn classify_cmd(o: &Options, notes: &mut Vec<String>) -> Result<(i32, String), Failure> {
    let s = setup(o)?;
    let method = single_method(o)?;
    if s.at.is_some() {
        notes.push("classify samples the whole grid; --at ignored".into());
    }
    let mut diagnostics = Vec::new();
    if method == Method::OrthogonalA11 {
        diagnostics.push(a11_variant_warning(&s));
    }
    let points = s.input.frame.chart.grid_points(o.grid);
    let samples = values(&build(method, &s)?, &points)?;
    let v = classify(&samples, s.input.lorentzian(), o.tol).map_err(Failure::input)?;
    let report = ClassifyReport {
        kind: v.kind.name(),
        k_value: v.k_value,
        spread: v.spread,
        lorentzian: s.input.lorentzian(),
        method: method.name(),
        samples: samples.len(),
        tol: o.tol,
        diagnostics,
    };
    Ok((EXIT_OK, to_json(&report)))
}

fn simplify_cmd(o: &Options, _notes: &mut Vec<String>) -> Result<(i32, String), Failure> {
    let s = setup(o)?;
    let method = single_method(o)?;
    let k = build(method, &s)?;
    let expr = k.expr().ok_or_else(|| Failure::input("--method: oracle has no symbolic form"))?;
    let simplified = simplify(expr);
    let value = s.at.map(|p| values(&k, &[p]).map(|v| v[0])).transpose()?;
    let mut diagnostics = Vec::new();
    if method == Method::OrthogonalA11 {
        diagnostics.push(a11_variant_warning(&s));
    }
    let report = SimplifyReport {
        method: method.name(),
        expression: simplified.display(s.input.vars()).to_string(),
        value,
        diagnostics,
    };
    Ok((EXIT_OK, to_json(&report)))
}
