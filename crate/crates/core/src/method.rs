//! Uniform access to every way this crate computes `K`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::frame::{
    commutator, k_closed_form, k_orthogonal, k_orthogonal_a11, k_orthonormal, k_pipeline, structural_functions,
    ChartFrame, MetricConstants, Point, Sampling,
};
use crate::oracle::CoordinateCurvature;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Closed,
    Pipeline,
    Oracle,
    Orthonormal,
    Orthogonal,
    /// Orthogonal formula with denominator `a11` only; kept for comparison.
    OrthogonalA11,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Closed,
        Method::Pipeline,
        Method::Oracle,
        Method::Orthonormal,
        Method::Orthogonal,
        Method::OrthogonalA11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Pipeline => "pipeline",
            Method::Oracle => "oracle",
            Method::Orthonormal => "orthonormal",
            Method::Orthogonal => "orthogonal",
            Method::OrthogonalA11 => "orthogonal-a11",
        }
    }

    /// Whether the method is defined for these constants.
    pub fn applies_to<T: Scalar>(self, metric: &MetricConstants<T>) -> bool {
        match self {
            Method::Orthonormal => *metric == MetricConstants::orthonormal_lorentzian(),
            Method::Orthogonal | Method::OrthogonalA11 => metric.a12.is_zero(),
            _ => true,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// A curvature field ready for pointwise evaluation.
#[derive(Debug, Clone)]
pub enum Curvature<T> {
    Symbolic(Expr<T>),
    Coordinate(Box<CoordinateCurvature<T>>),
}

impl<T: Scalar> Curvature<T> {
    pub fn build(method: Method, frame: &ChartFrame<T>, metric: &MetricConstants<T>, sampling: &Sampling) -> Result<Self> {
        metric.require_nondegenerate()?;
        if !method.applies_to(metric) {
            return Err(Error::PreconditionViolated(format!(
                "method `{method}` does not apply to a11={}, a12={}, a22={}",
                metric.a11, metric.a12, metric.a22
            )));
        }
        let structural = || structural_functions(frame, &commutator(frame), sampling);
        let expr = match method {
            Method::Closed => k_closed_form(metric, frame, &structural()?)?,
            Method::Pipeline => k_pipeline(metric, frame, sampling)?,
            Method::Orthonormal => k_orthonormal(frame, &structural()?),
            Method::Orthogonal => k_orthogonal(metric, frame, &structural()?)?,
            Method::OrthogonalA11 => k_orthogonal_a11(metric, frame, &structural()?)?,
            Method::Oracle => {
                frame.check_nondegenerate(sampling)?;
                return Ok(Curvature::Coordinate(Box::new(CoordinateCurvature::new(frame, metric)?)));
            }
        };
        Ok(Curvature::Symbolic(expr))
    }

    pub fn at(&self, point: &Point<T>) -> Result<T> {
        match self {
            Curvature::Symbolic(e) => crate::frame::eval_at_points(e, std::slice::from_ref(point)).map(|v| v[0].1),
            Curvature::Coordinate(c) => {
                let v = c.at(point)?;
                if !v.is_finite() {
                    return Err(Error::Domain {
                        point: [point[0].to_f64_lossy(), point[1].to_f64_lossy()],
                        source: crate::expr::DomainError::NonFinite,
                    });
                }
                Ok(v)
            }
        }
    }

    pub fn expr(&self) -> Option<&Expr<T>> {
        match self {
            Curvature::Symbolic(e) => Some(e),
            Curvature::Coordinate(_) => None,
        }
    }
}
