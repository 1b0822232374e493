use super::types::{point_f64, Chart, Point};
use crate::error::{Error, Result};
use crate::expr::{DomainError, Expr};
use crate::scalar::Scalar;

/// Evaluates `k` on the `n x n` inset grid of `chart` (row-major by the first variable).
pub fn eval_on_grid<T: Scalar>(k: &Expr<T>, chart: &Chart<T>, n: usize) -> Result<Vec<(Point<T>, T)>> {
    if n < 2 {
        return Err(Error::PreconditionViolated(format!("grid size must be at least 2, got {n}")));
    }
    eval_at_points(k, &chart.grid_points(n))
}

/// Evaluates `k` at each point, rejecting domain errors and non-finite values.
pub fn eval_at_points<T: Scalar>(k: &Expr<T>, points: &[Point<T>]) -> Result<Vec<(Point<T>, T)>> {
    points
        .iter()
        .map(|p| {
            let v = k.eval(p).map_err(|source| Error::Domain { point: point_f64(p), source })?;
            if !v.is_finite() {
                return Err(Error::Domain { point: point_f64(p), source: DomainError::NonFinite });
            }
            Ok((*p, v))
        })
        .collect()
}
