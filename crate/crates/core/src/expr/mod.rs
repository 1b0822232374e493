//! Symbolic scalar expressions over chart variables.
//!
//! Expressions are parsed from infix text, evaluated in floating point,
//! differentiated exactly, and lightly simplified. There is no symbolic
//! equality: every cross-check in this crate is pointwise and numeric.

mod ast;
mod diff;
mod eval;
mod parse;
mod simplify;

pub use ast::{BinaryOp, DisplayExpr, Expr, Node, UnaryOp};
pub use eval::DomainError;
pub use parse::{is_identifier, parse_expr, ParseError};
pub use simplify::simplify;
