//! Manifold description files.
//!
//! ```json
//! {"vars":["phi","theta"],
//!  "domain":{"phi":[0,6.2832],"theta":[-1.5,1.5]},
//!  "frame":{"X1":["1/cosh(theta)","0"],"X2":["0","1"]},
//!  "metric":{"a11":-1,"a12":0,"a22":1}}
//! ```
//!
//! `metric.a21` may be given as well but must equal `a12`.

use std::collections::BTreeMap;

use framecurv::{Chart64, ChartFrame64, MetricConstants64, VectorField};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed input: {0}")]
    Json(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl ToString) -> InputError {
    InputError::Field { field: field.into(), message: message.to_string() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    vars: Vec<String>,
    domain: BTreeMap<String, [f64; 2]>,
    frame: RawFrame,
    metric: RawMetric,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    #[serde(rename = "X1")]
    x1: [String; 2],
    #[serde(rename = "X2")]
    x2: [String; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    a11: f64,
    a12: f64,
    a21: Option<f64>,
    a22: f64,
}

#[derive(Debug, Clone)]
pub struct ManifoldInput {
    pub frame: ChartFrame64,
    pub metric: MetricConstants64,
}

impl ManifoldInput {
    pub fn lorentzian(&self) -> bool {
        self.metric.is_lorentzian()
    }

    pub fn vars(&self) -> &[String; 2] {
        self.frame.chart.vars()
    }
}

pub fn read_input(path: &str) -> Result<ManifoldInput, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io { path: path.into(), message: e.to_string() })?;
    parse_input(&bytes)
}

pub fn parse_input(bytes: &[u8]) -> Result<ManifoldInput, InputError> {
    let text = std::str::from_utf8(bytes).map_err(|e| InputError::Json(format!("not valid UTF-8: {e}")))?;
    let raw: RawInput = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;

    let vars: [String; 2] = raw
        .vars
        .try_into()
        .map_err(|v: Vec<String>| field_err("vars", format!("expected 2 variable names, got {}", v.len())))?;
    for name in raw.domain.keys() {
        if !vars.contains(name) {
            return Err(field_err(format!("domain.{name}"), "not one of the declared vars"));
        }
    }
    let interval = |v: &String| {
        raw.domain
            .get(v)
            .map(|&[lo, hi]| (lo, hi))
            .ok_or_else(|| field_err(format!("domain.{v}"), "missing interval"))
    };
    let domain = [interval(&vars[0])?, interval(&vars[1])?];
    let chart = Chart64::new([vars[0].as_str(), vars[1].as_str()], domain).map_err(|e| field_err("domain", e))?;

    let field = |name: &str, src: &[String; 2]| -> Result<VectorField<f64>, InputError> {
        let comp = |i: usize| chart.parse(&src[i]).map_err(|e| field_err(format!("frame.{name}[{i}]"), e));
        Ok(VectorField::new(comp(0)?, comp(1)?))
    };
    let x1 = field("X1", &raw.frame.x1)?;
    let x2 = field("X2", &raw.frame.x2)?;
    let frame = ChartFrame64::new(chart.clone(), x1, x2).map_err(|e| field_err("frame", e))?;

    let m = raw.metric;
    if let Some(a21) = m.a21 {
        if a21 != m.a12 {
            return Err(field_err("metric.a21", format!("must equal a12 ({}), got {a21}", m.a12)));
        }
    }
    let metric = MetricConstants64::new(m.a11, m.a12, m.a22).map_err(|e| field_err("metric", e))?;
    Ok(ManifoldInput { frame, metric })
}

/// Parses `--at "phi=1.0,theta=0.5"`; both variables must be given once.
pub fn parse_point(spec: &str, vars: &[String; 2]) -> Result<[f64; 2], InputError> {
    let mut point = [None, None];
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| field_err("--at", format!("`{part}` is not var=value")))?;
        let name = name.trim();
        let slot = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| field_err("--at", format!("unknown variable `{name}`")))?;
        if point[slot].is_some() {
            return Err(field_err("--at", format!("`{name}` given twice")));
        }
        let v: f64 = value.trim().parse().map_err(|_| field_err("--at", format!("`{value}` is not a number")))?;
        if !v.is_finite() {
            return Err(field_err("--at", format!("`{name}` is not finite")));
        }
        point[slot] = Some(v);
    }
    match point {
        [Some(a), Some(b)] => Ok([a, b]),
        _ => Err(field_err("--at", format!("expected values for `{}` and `{}`", vars[0], vars[1]))),
    }
}
