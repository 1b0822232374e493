use thiserror::Error;

use crate::expr::{DomainError, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("frame is singular: det E = {det:e}{}", at(point))]
    SingularFrame { point: Option<[f64; 2]>, det: f64 },
    #[error("metric constants are degenerate: det A = {0}")]
    DegenerateMetric(f64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{source} at {point:?}")]
    Domain { point: [f64; 2], source: DomainError },
    #[error("no samples")]
    EmptyInput,
}

fn at(point: &Option<[f64; 2]>) -> String {
    point.map(|p| format!(" at {p:?}")).unwrap_or_default()
}
