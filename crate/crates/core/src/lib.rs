//! Sectional curvature of a two-dimensional manifold described by a frame
//! `X1, X2` whose metric pairings `g(Xi, Xj)` are constant.
//!
//! The crate offers three independent routes to `K`:
//!
//! * a closed form in the structural functions `[X1, X2] = c1 X1 + c2 X2`
//!   and the constants `a11, a12, a22` ([`frame::k_closed_form`]),
//! * the step-by-step derivation through the frame connection and the
//!   curvature operator ([`frame::k_pipeline`]),
//! * a coordinate computation through Christoffel symbols that never looks
//!   at the frame formulas ([`oracle::CoordinateCurvature`]).
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases
//! below are what the command-line tool uses.

pub mod classify;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod frame;
pub mod method;
pub mod oracle;
pub mod scalar;

pub use classify::{classify, ClassificationVerdict, ModelSpace};
pub use error::{Error, Result};
pub use expr::{parse_expr, simplify, DomainError, Expr, ParseError};
pub use frame::{Chart, ChartFrame, MetricConstants, Sampling, StructuralFunctions, VectorField};
pub use method::{Curvature, Method};
pub use oracle::{k_oracle, CoordinateCurvature, LeftInvariantFixture};
pub use scalar::{rel_deviation, Scalar};

pub type Expr64 = Expr<f64>;
pub type Expr32 = Expr<f32>;
pub type Chart64 = Chart<f64>;
pub type Chart32 = Chart<f32>;
pub type ChartFrame64 = ChartFrame<f64>;
pub type ChartFrame32 = ChartFrame<f32>;
pub type MetricConstants64 = MetricConstants<f64>;
pub type MetricConstants32 = MetricConstants<f32>;
pub type Curvature64 = Curvature<f64>;
pub type Verdict64 = ClassificationVerdict<f64>;
