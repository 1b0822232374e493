use std::collections::HashMap;

use super::ast::{BinaryOp, Expr, Node, UnaryOp};
use crate::scalar::Scalar;

impl<T: Scalar> Expr<T> {
    /// Exact partial derivative with respect to variable `var`.
    ///
    /// Shared subtrees are differentiated once, so the result stays a DAG of
    /// roughly the same size as the input instead of unfolding.
    pub fn differentiate(&self, var: usize) -> Expr<T> {
        let mut memo = HashMap::new();
        derive(self, var, &mut memo)
    }
}

fn derive<T: Scalar>(e: &Expr<T>, var: usize, memo: &mut HashMap<usize, Expr<T>>) -> Expr<T> {
    if let Some(d) = memo.get(&e.id()) {
        return d.clone();
    }
    let d = match e.node() {
        Node::Const(_) => Expr::zero(),
        Node::Var(i) => {
            if *i == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Unary(op, u) => {
            let du = derive(u, var, memo);
            if du.is_zero() {
                Expr::zero()
            } else {
                let outer = match op {
                    UnaryOp::Neg => return remember(memo, e, -du),
                    UnaryOp::Sin => u.cos(),
                    UnaryOp::Cos => -u.sin(),
                    UnaryOp::Tan => Expr::one() / u.cos().powi(2),
                    UnaryOp::Sinh => u.cosh(),
                    UnaryOp::Cosh => u.sinh(),
                    UnaryOp::Tanh => Expr::one() / u.cosh().powi(2),
                    UnaryOp::Exp => e.clone(),
                    UnaryOp::Log => Expr::one() / u,
                    UnaryOp::Sqrt => Expr::one() / (Expr::lit(2.0) * e),
                };
                outer * du
            }
        }
        Node::Binary(op, l, r) => {
            let dl = derive(l, var, memo);
            let dr = derive(r, var, memo);
            match op {
                BinaryOp::Add => dl + dr,
                BinaryOp::Sub => dl - dr,
                BinaryOp::Mul => dl * r + l * dr,
                BinaryOp::Div => {
                    if dr.is_zero() {
                        dl / r
                    } else {
                        (dl * r - l * dr) / r.powi(2)
                    }
                }
                BinaryOp::Pow => {
                    let n = r.as_const().expect("pow exponent is constant");
                    if n.is_zero() || dl.is_zero() {
                        Expr::zero()
                    } else {
                        let reduced = match (n - T::one()).to_i32() {
                            Some(k) if (n - T::one()).fract().is_zero() => l.powi(k),
                            _ => Expr::binary(BinaryOp::Pow, l.clone(), Expr::constant(n - T::one())),
                        };
                        Expr::constant(n) * reduced * dl
                    }
                }
            }
        }
    };
    remember(memo, e, d)
}

fn remember<T: Scalar>(memo: &mut HashMap<usize, Expr<T>>, e: &Expr<T>, d: Expr<T>) -> Expr<T> {
    memo.insert(e.id(), d.clone());
    d
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::expr::parse_expr;

    fn p(src: &str) -> Expr<f64> {
        parse_expr(src, &["x", "theta"]).unwrap()
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(p("3.5").differentiate(0).is_zero());
        assert!(p("cosh(theta)").differentiate(0).is_zero());
    }

    #[test]
    fn tanh_derivative_matches_sech_squared() {
        let d = p("tanh(theta)").differentiate(1);
        let sech2 = p("1/cosh(theta)^2");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = rng.random_range(-2.0..2.0);
            let (a, b) = (d.eval(&[0.0, t]).unwrap(), sech2.eval(&[0.0, t]).unwrap());
            assert!((a - b).abs() <= 1e-12 * b.abs(), "theta={t}: {a} vs {b}");
        }
    }

    #[test]
    fn tanh_square_plus_derivative_is_one() {
        let th = p("tanh(theta)");
        let check = &th * &th + th.differentiate(1);
        for t in [-1.4, -0.3, 0.0, 0.8, 1.5] {
            assert!((check.eval(&[0.0, t]).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    type Rule = (&'static str, fn(f64) -> f64);

    #[test]
    fn each_rule_against_closed_form() {
        let cases: [Rule; 10] = [
            ("sin(x)", |x| x.cos()),
            ("cos(x)", |x| -x.sin()),
            ("tan(x)", |x| 1.0 / x.cos().powi(2)),
            ("sinh(x)", |x| x.cosh()),
            ("cosh(x)", |x| x.sinh()),
            ("exp(2*x)", |x| 2.0 * (2.0 * x).exp()),
            ("log(x)", |x| 1.0 / x),
            ("sqrt(x)", |x| 0.5 / x.sqrt()),
            ("x^2.5", |x| 2.5 * x.powf(1.5)),
            ("1/x - x*x", |x| -1.0 / (x * x) - 2.0 * x),
        ];
        for (src, df) in cases {
            let d = p(src).differentiate(0);
            for x in [0.3, 0.9, 1.7] {
                let got = d.eval(&[x, 0.0]).unwrap();
                assert!((got - df(x)).abs() < 1e-12 * df(x).abs().max(1.0), "{src} at {x}");
            }
        }
    }

    #[test]
    fn shared_subtrees_do_not_unfold() {
        let mut e = p("sin(x)*theta");
        for _ in 0..30 {
            e = &e * &e;
        }
        let d = e.differentiate(0);
        // as a tree this has 2^30 leaves
        assert!(!d.is_zero());
    }
}
