use thiserror::Error;

use super::ast::{BinaryOp, Expr, Node, UnaryOp};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("logarithm of a non-positive value")]
    LogNonPositive,
    #[error("square root of a negative value")]
    SqrtNegative,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("negative base raised to a non-integer power")]
    NegativeBaseFractionalPower,
    #[error("variable #{0} is not bound at the evaluation point")]
    UnboundVariable(usize),
    #[error("result is not finite")]
    NonFinite,
}

impl<T: Scalar> Expr<T> {
    /// Evaluates at `point`, where `point[i]` binds variable `i`.
    pub fn eval(&self, point: &[T]) -> Result<T, DomainError> {
        match self.node() {
            Node::Const(v) => Ok(*v),
            Node::Var(i) => point.get(*i).copied().ok_or(DomainError::UnboundVariable(*i)),
            Node::Unary(op, c) => apply_unary(*op, c.eval(point)?),
            Node::Binary(op, l, r) => apply_binary(*op, l.eval(point)?, r.eval(point)?),
        }
    }
}

pub(crate) fn apply_unary<T: Scalar>(op: UnaryOp, x: T) -> Result<T, DomainError> {
    Ok(match op {
        UnaryOp::Neg => -x,
        UnaryOp::Sin => x.sin(),
        UnaryOp::Cos => x.cos(),
        UnaryOp::Tan => x.tan(),
        UnaryOp::Sinh => x.sinh(),
        UnaryOp::Cosh => x.cosh(),
        UnaryOp::Tanh => x.tanh(),
        UnaryOp::Exp => x.exp(),
        UnaryOp::Log => {
            if x <= T::zero() {
                return Err(DomainError::LogNonPositive);
            }
            x.ln()
        }
        UnaryOp::Sqrt => {
            if x < T::zero() {
                return Err(DomainError::SqrtNegative);
            }
            x.sqrt()
        }
    })
}

pub(crate) fn apply_binary<T: Scalar>(op: BinaryOp, a: T, b: T) -> Result<T, DomainError> {
    Ok(match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => {
            if b.is_zero() {
                return Err(DomainError::DivisionByZero);
            }
            a / b
        }
        BinaryOp::Pow => {
            let integral = b.fract().is_zero();
            if a.is_zero() && b < T::zero() {
                return Err(DomainError::ZeroToNegativePower);
            }
            if a < T::zero() && !integral {
                return Err(DomainError::NegativeBaseFractionalPower);
            }
            match b.to_i32() {
                Some(n) if integral => a.powi(n),
                _ => a.powf(b),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn ev(src: &str, at: f64) -> Result<f64, DomainError> {
        parse_expr::<f64, _>(src, &["theta"]).unwrap().eval(&[at])
    }

    #[test]
    fn sample_values() {
        assert_eq!(ev("tanh(theta)", 0.0).unwrap(), 0.0);
        assert_eq!(ev("1/cosh(theta)", 0.0).unwrap(), 1.0);
        let v = ev("sinh(theta)^2+1", 0.7).unwrap();
        let expected = 0.7_f64.cosh().powi(2);
        assert!((v - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(ev("log(theta)", 0.0), Err(DomainError::LogNonPositive));
        assert_eq!(ev("log(theta)", -1.0), Err(DomainError::LogNonPositive));
        assert_eq!(ev("sqrt(theta)", -1e-3), Err(DomainError::SqrtNegative));
        assert_eq!(ev("1/theta", 0.0), Err(DomainError::DivisionByZero));
        assert_eq!(ev("theta^-1", 0.0), Err(DomainError::ZeroToNegativePower));
        assert_eq!(ev("theta^0.5", -4.0), Err(DomainError::NegativeBaseFractionalPower));
        assert_eq!(ev("theta^3", -2.0), Ok(-8.0));
        assert_eq!(ev("sqrt(theta)", 0.0), Ok(0.0));
    }

    #[test]
    fn unbound_variable() {
        let e: Expr<f64> = Expr::var(1);
        assert_eq!(e.eval(&[1.0]), Err(DomainError::UnboundVariable(1)));
    }

    #[test]
    fn evaluation_is_bit_reproducible() {
        let e = parse_expr::<f64, _>("exp(sin(x)*y)/(1+y^2) - sqrt(x)", &["x", "y"]).unwrap();
        let a = e.eval(&[0.37, -1.9]).unwrap();
        for _ in 0..10 {
            assert_eq!(e.eval(&[0.37, -1.9]).unwrap().to_bits(), a.to_bits());
        }
    }

    #[test]
    fn works_in_single_precision() {
        let e = parse_expr::<f32, _>("sinh(theta)^2+1", &["theta"]).unwrap();
        let v = e.eval(&[0.7]).unwrap();
        assert!((v - 0.7_f32.cosh().powi(2)).abs() < 1e-5);
    }
}
