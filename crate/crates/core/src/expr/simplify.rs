use std::collections::HashMap;

use super::ast::{BinaryOp, Expr, Node, UnaryOp};
use super::eval::{apply_binary, apply_unary};
use crate::scalar::Scalar;

/// Light, value-preserving normalisation: constant folding plus the identity
/// and annihilator rules for 0 and 1, and sign normalisation. Folding that would raise a domain error
/// or produce a non-finite constant is left unevaluated.
pub fn simplify<T: Scalar>(e: &Expr<T>) -> Expr<T> {
    let mut memo = HashMap::new();
    go(e, &mut memo)
}

fn go<T: Scalar>(e: &Expr<T>, memo: &mut HashMap<usize, Expr<T>>) -> Expr<T> {
    if let Some(s) = memo.get(&e.id()) {
        return s.clone();
    }
    let s = match e.node() {
        Node::Const(_) | Node::Var(_) => e.clone(),
        Node::Unary(op, c) => {
            let c = go(c, memo);
            match (op, c.node()) {
                (_, Node::Const(v)) => fold(apply_unary(*op, *v)).unwrap_or_else(|| Expr::unary(*op, c.clone())),
                (UnaryOp::Neg, Node::Unary(UnaryOp::Neg, inner)) => inner.clone(),
                _ => Expr::unary(*op, c),
            }
        }
        Node::Binary(op, l, r) => {
            let l = go(l, memo);
            let r = go(r, memo);
            binary(*op, l, r)
        }
    };
    memo.insert(e.id(), s.clone());
    s
}

fn fold<T: Scalar>(v: Result<T, super::DomainError>) -> Option<Expr<T>> {
    v.ok().filter(|x| x.is_finite()).map(Expr::constant)
}

fn binary<T: Scalar>(op: BinaryOp, l: Expr<T>, r: Expr<T>) -> Expr<T> {
    if let (Some(a), Some(b)) = (l.as_const(), r.as_const()) {
        if let Some(c) = fold(apply_binary(op, a, b)) {
            return c;
        }
    }
    let zero = |e: &Expr<T>| e.is_zero();
    let one = |e: &Expr<T>| e.is_one();
    match op {
        BinaryOp::Add if zero(&l) => r,
        BinaryOp::Add if zero(&r) => l,
        BinaryOp::Sub if zero(&r) => l,
        BinaryOp::Sub if zero(&l) => match r.node() {
            Node::Unary(UnaryOp::Neg, inner) => inner.clone(),
            _ => Expr::unary(UnaryOp::Neg, r),
        },
        BinaryOp::Mul if zero(&l) || zero(&r) => Expr::zero(),
        BinaryOp::Mul if one(&l) => r,
        BinaryOp::Mul if one(&r) => l,
        BinaryOp::Div if zero(&l) => Expr::zero(),
        BinaryOp::Div if one(&r) => l,
        BinaryOp::Pow if one(&r) => l,
        BinaryOp::Pow if zero(&r) => Expr::one(),
        _ => signs(op, l, r),
    }
}

fn negated<T: Scalar>(e: &Expr<T>) -> Option<Expr<T>> {
    match e.node() {
        Node::Unary(UnaryOp::Neg, inner) => Some(inner.clone()),
        Node::Const(v) if *v < T::zero() => Some(Expr::constant(-*v)),
        _ => None,
    }
}

fn neg<T: Scalar>(e: Expr<T>) -> Expr<T> {
    match e.node() {
        Node::Unary(UnaryOp::Neg, inner) => inner.clone(),
        Node::Const(v) => Expr::constant(-*v),
        _ => Expr::unary(UnaryOp::Neg, e),
    }
}

/// Pulls negations out of products and quotients and folds them into sums.
fn signs<T: Scalar>(op: BinaryOp, l: Expr<T>, r: Expr<T>) -> Expr<T> {
    match op {
        BinaryOp::Add => match (negated(&l), negated(&r)) {
            (_, Some(b)) => binary(BinaryOp::Sub, l, b),
            (Some(a), None) => binary(BinaryOp::Sub, r, a),
            _ => Expr::binary(op, l, r),
        },
        BinaryOp::Sub => match negated(&r) {
            Some(b) => binary(BinaryOp::Add, l, b),
            None => Expr::binary(op, l, r),
        },
        BinaryOp::Mul | BinaryOp::Div => {
            if let Some(a) = negated(&l) {
                return neg(binary(op, a, r));
            }
            if let Some(b) = negated(&r) {
                return neg(binary(op, l, b));
            }
            match (op, r.node()) {
                (BinaryOp::Div, Node::Binary(BinaryOp::Div, one, b)) if one.is_one() => {
                    binary(BinaryOp::Mul, l, b.clone())
                }
                _ => Expr::binary(op, l, r),
            }
        }
        BinaryOp::Pow => Expr::binary(op, l, r),
    }
}
