//! Recursive-descent parser for the infix expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' unary)?            right-associative, exponent must fold to a constant
//! atom    := number | ident | func '(' expr ')' | '(' expr ')'
//! number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```

use thiserror::Error;

use super::ast::{BinaryOp, Expr, Node, UnaryOp};
use super::simplify::simplify;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// True if `name` is a syntactically valid identifier that does not shadow a function.
pub fn is_identifier(name: &str) -> bool {
    let bytes = name.as_bytes();
    !bytes.is_empty()
        && is_ident_start(bytes[0])
        && bytes.iter().all(|&b| is_ident_char(b))
        && UnaryOp::from_name(name).is_none()
}

/// Parses `src` into an expression whose variables index into `vars`.
pub fn parse_expr<T: Scalar, S: AsRef<str>>(src: &str, vars: &[S]) -> Result<Expr<T>, ParseError> {
    if vars.is_empty() {
        return Err(ParseError::new(0, "variable list is empty"));
    }
    for (i, v) in vars.iter().enumerate() {
        let v = v.as_ref();
        if !is_identifier(v) {
            return Err(ParseError::new(0, format!("`{v}` is not a valid variable name")));
        }
        if vars[..i].iter().any(|w| w.as_ref() == v) {
            return Err(ParseError::new(0, format!("variable `{v}` declared twice")));
        }
    }
    let mut parser = Parser { src: src.as_bytes(), pos: 0, vars };
    parser.skip_ws();
    if parser.at_end() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let e = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(ParseError::new(parser.pos, format!("unexpected `{}`", parser.peek_char())));
    }
    Ok(e)
}

struct Parser<'a, S> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(b'+') {
                BinaryOp::Add
            } else if self.eat(b'-') {
                BinaryOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(b'*') {
                BinaryOp::Mul
            } else if self.eat(b'/') {
                BinaryOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(Expr::unary(UnaryOp::Neg, inner));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let exp_pos = self.pos;
        let exponent: Expr<T> = self.unary()?;
        match simplify(&exponent).node() {
            Node::Const(v) if v.is_finite() => Ok(Expr::binary(BinaryOp::Pow, base, Expr::constant(*v))),
            _ => Err(ParseError::new(exp_pos, "exponent must be a constant")),
        }
    }

    fn atom<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(ParseError::new(start, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(ParseError::new(self.pos.min(self.src.len()), "expected `)`"));
                }
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => self.number(),
            Some(b) if is_ident_start(b) => self.identifier(),
            Some(_) => Err(ParseError::new(start, format!("unexpected `{}`", self.peek_char()))),
        }
    }

    fn number<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while matches!(p.peek(), Some(b) if b.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut mantissa = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            mantissa += digits(self);
        }
        if mantissa == 0 {
            return Err(ParseError::new(start, "malformed number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                return Err(ParseError::new(save, "malformed exponent"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: f64 = text
            .parse()
            .map_err(|_| ParseError::new(start, format!("malformed number `{text}`")))?;
        if !value.is_finite() {
            return Err(ParseError::new(start, format!("number `{text}` out of range")));
        }
        Ok(Expr::constant(T::lit(value)))
    }

    fn identifier<T: Scalar>(&mut self) -> Result<Expr<T>, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if is_ident_char(b)) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        self.skip_ws();
        if self.peek() == Some(b'(') {
            let Some(op) = UnaryOp::from_name(name) else {
                return Err(ParseError::new(start, format!("unknown function `{name}`")));
            };
            self.pos += 1;
            let arg = self.expr()?;
            if !self.eat(b')') {
                return Err(ParseError::new(self.pos.min(self.src.len()), "expected `)`"));
            }
            return Ok(Expr::unary(op, arg));
        }
        if let Some(i) = self.vars.iter().position(|v| v.as_ref() == name) {
            return Ok(Expr::var(i));
        }
        if name == "pi" {
            return Ok(Expr::constant(T::lit(std::f64::consts::PI)));
        }
        if UnaryOp::from_name(name).is_some() {
            return Err(ParseError::new(start, format!("function `{name}` needs an argument")));
        }
        Err(ParseError::new(start, format!("unknown identifier `{name}`")))
    }
}
