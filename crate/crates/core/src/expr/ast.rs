use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
}

impl UnaryOp {
    /// Every callable function, in the spelling accepted by the parser.
    pub const FUNCTIONS: [UnaryOp; 9] = [
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Tan,
        UnaryOp::Sinh,
        UnaryOp::Cosh,
        UnaryOp::Tanh,
        UnaryOp::Exp,
        UnaryOp::Log,
        UnaryOp::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Sinh => "sinh",
            UnaryOp::Cosh => "cosh",
            UnaryOp::Tanh => "tanh",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryOp> {
        Self::FUNCTIONS.into_iter().find(|op| op.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Exponent is always a `Node::Const`.
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node<T> {
    Const(T),
    /// Index into the owning chart's variable list.
    Var(usize),
    Unary(UnaryOp, Expr<T>),
    Binary(BinaryOp, Expr<T>, Expr<T>),
}

/// Immutable, cheaply clonable expression tree over chart variables.
///
/// Subtrees are reference counted, so the results of differentiation share
/// structure with their inputs instead of copying it.
#[derive(Clone, PartialEq)]
pub struct Expr<T>(Arc<Node<T>>);

impl<T: Scalar> Expr<T> {
    pub fn from_node(node: Node<T>) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node<T> {
        &self.0
    }

    /// Identity of the shared node, used for memoising tree walks.
    pub(crate) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// `-0.0` is stored as `0.0`.
    pub fn constant(value: T) -> Self {
        Self::from_node(Node::Const(value + T::zero()))
    }

    pub fn lit(value: f64) -> Self {
        Self::constant(T::lit(value))
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn var(index: usize) -> Self {
        Self::from_node(Node::Var(index))
    }

    /// Raw unary node, no folding.
    pub fn unary(op: UnaryOp, child: Expr<T>) -> Self {
        Self::from_node(Node::Unary(op, child))
    }

    /// Raw binary node, no folding.
    pub fn binary(op: BinaryOp, left: Expr<T>, right: Expr<T>) -> Self {
        Self::from_node(Node::Binary(op, left, right))
    }

    pub fn as_const(&self) -> Option<T> {
        match self.node() {
            Node::Const(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(T::zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_const() == Some(T::one())
    }

    /// `self^exponent` with the light folding used by the arithmetic operators.
    pub fn powi(&self, exponent: i32) -> Self {
        match exponent {
            0 => Self::one(),
            1 => self.clone(),
            _ => match self.as_const() {
                Some(v) => Self::constant(v.powi(exponent)),
                None => Self::binary(BinaryOp::Pow, self.clone(), Self::constant(T::lit(exponent as f64))),
            },
        }
    }

    pub fn apply(&self, op: UnaryOp) -> Self {
        if op == UnaryOp::Neg {
            return -self;
        }
        Self::unary(op, self.clone())
    }

    pub fn sin(&self) -> Self {
        self.apply(UnaryOp::Sin)
    }
    pub fn cos(&self) -> Self {
        self.apply(UnaryOp::Cos)
    }
    pub fn tan(&self) -> Self {
        self.apply(UnaryOp::Tan)
    }
    pub fn sinh(&self) -> Self {
        self.apply(UnaryOp::Sinh)
    }
    pub fn cosh(&self) -> Self {
        self.apply(UnaryOp::Cosh)
    }
    pub fn tanh(&self) -> Self {
        self.apply(UnaryOp::Tanh)
    }
    pub fn exp(&self) -> Self {
        self.apply(UnaryOp::Exp)
    }
    pub fn ln(&self) -> Self {
        self.apply(UnaryOp::Log)
    }
    pub fn sqrt(&self) -> Self {
        self.apply(UnaryOp::Sqrt)
    }

    pub fn scale(&self, factor: T) -> Self {
        Self::constant(factor) * self
    }

    /// Number of nodes in the fully unfolded tree (shared subtrees counted once per use).
    pub fn tree_size(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Var(_) => 1,
            Node::Unary(_, c) => 1 + c.tree_size(),
            Node::Binary(_, l, r) => 1 + l.tree_size() + r.tree_size(),
        }
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self.node() {
            Node::Const(_) => None,
            Node::Var(i) => Some(*i),
            Node::Unary(_, c) => c.max_var(),
            Node::Binary(_, l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Renders the expression in parser syntax using `vars` for variable names.
    pub fn display<'a, S: AsRef<str>>(&'a self, vars: &'a [S]) -> DisplayExpr<'a, T, S> {
        DisplayExpr { expr: self, vars }
    }
}

impl<T: fmt::Debug> fmt::Debug for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T: Scalar> From<T> for Expr<T> {
    fn from(value: T) -> Self {
        Expr::constant(value)
    }
}

fn add<T: Scalar>(l: &Expr<T>, r: &Expr<T>) -> Expr<T> {
    match (l.as_const(), r.as_const()) {
        (Some(a), Some(b)) => Expr::constant(a + b),
        (Some(a), None) if a.is_zero() => r.clone(),
        (None, Some(b)) if b.is_zero() => l.clone(),
        _ => Expr::binary(BinaryOp::Add, l.clone(), r.clone()),
    }
}

fn sub<T: Scalar>(l: &Expr<T>, r: &Expr<T>) -> Expr<T> {
    match (l.as_const(), r.as_const()) {
        (Some(a), Some(b)) => Expr::constant(a - b),
        (Some(a), None) if a.is_zero() => -r,
        (None, Some(b)) if b.is_zero() => l.clone(),
        _ => Expr::binary(BinaryOp::Sub, l.clone(), r.clone()),
    }
}

fn mul<T: Scalar>(l: &Expr<T>, r: &Expr<T>) -> Expr<T> {
    match (l.as_const(), r.as_const()) {
        (Some(a), Some(b)) => Expr::constant(a * b),
        (Some(a), _) | (_, Some(a)) if a.is_zero() => Expr::zero(),
        (Some(a), None) if a == T::one() => r.clone(),
        (None, Some(b)) if b == T::one() => l.clone(),
        (Some(a), None) if a == -T::one() => -r,
        (None, Some(b)) if b == -T::one() => -l,
        _ => Expr::binary(BinaryOp::Mul, l.clone(), r.clone()),
    }
}

fn div<T: Scalar>(l: &Expr<T>, r: &Expr<T>) -> Expr<T> {
    match (l.as_const(), r.as_const()) {
        (Some(a), Some(b)) if !b.is_zero() => Expr::constant(a / b),
        (Some(a), _) if a.is_zero() => Expr::zero(),
        (None, Some(b)) if b == T::one() => l.clone(),
        _ => Expr::binary(BinaryOp::Div, l.clone(), r.clone()),
    }
}

fn neg<T: Scalar>(e: &Expr<T>) -> Expr<T> {
    match e.node() {
        Node::Const(v) => Expr::constant(-*v),
        Node::Unary(UnaryOp::Neg, inner) => inner.clone(),
        _ => Expr::unary(UnaryOp::Neg, e.clone()),
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl<T: Scalar> $trait<&Expr<T>> for &Expr<T> {
            type Output = Expr<T>;
            fn $method(self, rhs: &Expr<T>) -> Expr<T> {
                $f(self, rhs)
            }
        }
        impl<T: Scalar> $trait<Expr<T>> for Expr<T> {
            type Output = Expr<T>;
            fn $method(self, rhs: Expr<T>) -> Expr<T> {
                $f(&self, &rhs)
            }
        }
        impl<T: Scalar> $trait<&Expr<T>> for Expr<T> {
            type Output = Expr<T>;
            fn $method(self, rhs: &Expr<T>) -> Expr<T> {
                $f(&self, rhs)
            }
        }
        impl<T: Scalar> $trait<Expr<T>> for &Expr<T> {
            type Output = Expr<T>;
            fn $method(self, rhs: Expr<T>) -> Expr<T> {
                $f(self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl<T: Scalar> Neg for &Expr<T> {
    type Output = Expr<T>;
    fn neg(self) -> Expr<T> {
        neg(self)
    }
}

impl<T: Scalar> Neg for Expr<T> {
    type Output = Expr<T>;
    fn neg(self) -> Expr<T> {
        neg(&self)
    }
}

// Printing precedence levels; higher binds tighter.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence<T>(node: &Node<T>) -> u8 {
    match node {
        Node::Const(_) | Node::Var(_) => PREC_ATOM,
        Node::Unary(UnaryOp::Neg, _) => PREC_NEG,
        Node::Unary(_, _) => PREC_ATOM,
        Node::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => PREC_ADD,
        Node::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => PREC_MUL,
        Node::Binary(BinaryOp::Pow, _, _) => PREC_POW,
    }
}

pub struct DisplayExpr<'a, T, S> {
    expr: &'a Expr<T>,
    vars: &'a [S],
}

impl<T: Scalar, S: AsRef<str>> DisplayExpr<'_, T, S> {
    fn write(&self, f: &mut fmt::Formatter<'_>, e: &Expr<T>, min_prec: u8) -> fmt::Result {
        let prec = precedence(e.node());
        let parens = prec < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match e.node() {
            Node::Const(v) if *v < T::zero() => write!(f, "(-{})", -*v)?,
            Node::Const(v) => write!(f, "{v}")?,
            Node::Var(i) => match self.vars.get(*i) {
                Some(name) => f.write_str(name.as_ref())?,
                None => write!(f, "_{i}")?,
            },
            Node::Unary(UnaryOp::Neg, c) => {
                f.write_str("-")?;
                self.write(f, c, PREC_NEG)?;
            }
            Node::Unary(op, c) => {
                write!(f, "{}(", op.name())?;
                self.write(f, c, 0)?;
                f.write_str(")")?;
            }
            Node::Binary(op, l, r) => {
                let (sym, lp, rp) = match op {
                    BinaryOp::Add => (" + ", PREC_ADD, PREC_ADD + 1),
                    BinaryOp::Sub => (" - ", PREC_ADD, PREC_ADD + 1),
                    BinaryOp::Mul => ("*", PREC_MUL, PREC_MUL + 1),
                    BinaryOp::Div => ("/", PREC_MUL, PREC_MUL + 1),
                    BinaryOp::Pow => ("^", PREC_ATOM, PREC_ATOM),
                };
                self.write(f, l, lp)?;
                f.write_str(sym)?;
                self.write(f, r, rp)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<T: Scalar, S: AsRef<str>> fmt::Display for DisplayExpr<'_, T, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.expr, 0)
    }
}
