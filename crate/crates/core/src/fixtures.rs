//! Reference manifolds and seeded random generators for tests and demos.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{BinaryOp, Expr, Node, UnaryOp};
use crate::frame::{Chart, ChartFrame, MetricConstants, Point, Sampling, VectorField};
use crate::oracle::combine;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture<T> {
    pub name: String,
    pub frame: ChartFrame<T>,
    pub metric: MetricConstants<T>,
}

fn chart<T: Scalar>(vars: [&str; 2], domain: [(f64, f64); 2]) -> Chart<T> {
    Chart::new(vars, domain.map(|(lo, hi)| (T::lit(lo), T::lit(hi)))).expect("valid fixture chart")
}

/// Anti-de Sitter plane `g = -cosh^2(theta) dphi^2 + dtheta^2` with the
/// orthonormal frame `X1 = d_phi / cosh(theta)`, `X2 = d_theta`. K = -1.
pub fn anti_de_sitter<T: Scalar>() -> Fixture<T> {
    anti_de_sitter_on([(0.0, TAU), (-1.5, 1.5)])
}

pub fn anti_de_sitter_on<T: Scalar>(domain: [(f64, f64); 2]) -> Fixture<T> {
    let c = chart(["phi", "theta"], domain);
    let frame = ChartFrame::parse(c, ["1/cosh(theta)", "0"], ["0", "1"]).expect("fixture parses");
    Fixture { name: "anti-de-sitter".into(), frame, metric: MetricConstants::orthonormal_lorentzian() }
}

/// Anti-de Sitter with `X1` stretched by `scale`, so `a11 = -scale^2`. K = -1.
pub fn anti_de_sitter_scaled<T: Scalar>(scale: f64) -> Fixture<T> {
    let base = anti_de_sitter::<T>();
    let s = Expr::lit(scale);
    let x1 = base.frame.x1.scale(&s);
    let frame = ChartFrame::new(base.frame.chart.clone(), x1, base.frame.x2.clone()).expect("fixture frame");
    let metric = MetricConstants::new(T::lit(-scale * scale), T::zero(), T::one()).expect("nondegenerate");
    Fixture { name: format!("anti-de-sitter-x{scale}"), frame, metric }
}

/// De Sitter plane `g = -cos^2(theta) dphi^2 + dtheta^2` on `|theta| <= 1`,
/// frame `X1 = d_phi / cos(theta)`, `X2 = d_theta`. K = +1.
pub fn de_sitter<T: Scalar>() -> Fixture<T> {
    let c = chart(["phi", "theta"], [(0.0, TAU), (-1.0, 1.0)]);
    let frame = ChartFrame::parse(c, ["1/cos(theta)", "0"], ["0", "1"]).expect("fixture parses");
    Fixture { name: "de-sitter".into(), frame, metric: MetricConstants::orthonormal_lorentzian() }
}

/// Coordinate frame `X1 = d_x`, `X2 = d_y` on `[-1, 1]^2`: flat for any constants.
pub fn flat<T: Scalar>(metric: MetricConstants<T>) -> Fixture<T> {
    let c = chart(["x", "y"], [(-1.0, 1.0), (-1.0, 1.0)]);
    let frame = ChartFrame::parse(c, ["1", "0"], ["0", "1"]).expect("fixture parses");
    Fixture { name: "flat".into(), frame, metric }
}

/// `X1 = y d_x`, `X2 = y d_y` on `x in [-1, 1]`, `y in [0.5, 3]`, so `[X1, X2] = -X1`.
pub fn x_frame<T: Scalar>() -> ChartFrame<T> {
    let c = chart(["x", "y"], [(-1.0, 1.0), (0.5, 3.0)]);
    ChartFrame::parse(c, ["y", "0"], ["0", "y"]).expect("fixture parses")
}

/// `Y1 = alpha X1 + gamma X2`, `Y2 = beta X1 + delta X2` over [`x_frame`],
/// with `coeffs = [alpha, beta, gamma, delta]`. Then `[Y1, Y2] = -delta Y1 + gamma Y2`.
pub fn y_frame<T: Scalar>(coeffs: [f64; 4]) -> ChartFrame<T> {
    let [alpha, beta, gamma, delta] = coeffs.map(T::lit);
    let x = x_frame::<T>();
    let y1 = combine(alpha, &x.x1, gamma, &x.x2);
    let y2 = combine(beta, &x.x1, delta, &x.x2);
    ChartFrame::new(x.chart.clone(), y1, y2).expect("fixture frame")
}

/// A frame whose curvature varies: `X1 = d_phi / (1 + theta^2)`, `X2 = d_theta`,
/// i.e. `g = -(1 + theta^2)^2 dphi^2 + dtheta^2` with `K = -2 / (1 + theta^2)`.
pub fn non_constant<T: Scalar>() -> Fixture<T> {
    let c = chart(["phi", "theta"], [(0.0, TAU), (-1.5, 1.5)]);
    let frame = ChartFrame::parse(c, ["1/(1 + theta^2)", "0"], ["0", "1"]).expect("fixture parses");
    Fixture { name: "non-constant".into(), frame, metric: MetricConstants::orthonormal_lorentzian() }
}

/// Random polynomial of degree at most two in both chart variables.
fn random_quadratic<T: Scalar>(rng: &mut impl Rng) -> Expr<T> {
    let (u, v) = (Expr::<T>::var(0), Expr::<T>::var(1));
    let monomials = [Expr::one(), u.clone(), v.clone(), &u * &u, &u * &v, &v * &v];
    let mut sum = Expr::lit(rng.random_range(-2.0..2.0));
    for m in &monomials[1..] {
        if rng.random_bool(0.6) {
            sum = sum + Expr::lit(rng.random_range(-1.0..1.0)) * m;
        }
    }
    sum
}

fn random_component<T: Scalar>(rng: &mut impl Rng) -> Expr<T> {
    let p = random_quadratic(rng);
    match rng.random_range(0..4) {
        0 => p.sin(),
        1 => (Expr::lit(0.5) * p).cosh(),
        _ => p,
    }
}

/// Seeded stream of random frames and constants with `|det E| >= 0.2` on a
/// dense lattice plus the default validation points, and constants
/// alternating between Lorentzian and Riemannian signature.
pub struct RandomManifolds {
    rng: ChaCha8Rng,
    produced: usize,
}

impl RandomManifolds {
    pub const MIN_FRAME_DET: f64 = 0.2;

    pub fn new(seed: u64) -> Self {
        RandomManifolds { rng: ChaCha8Rng::seed_from_u64(seed), produced: 0 }
    }

    fn frame<T: Scalar>(&mut self) -> ChartFrame<T> {
        let c = chart::<T>(["u", "v"], [(-1.0, 1.0), (-1.0, 1.0)]);
        let probe = Sampling { grid: 15, ..Sampling::default() };
        let points = probe.points(&c);
        loop {
            let x1 = VectorField::new(random_component(&mut self.rng), random_component(&mut self.rng));
            let x2 = VectorField::new(random_component(&mut self.rng), random_component(&mut self.rng));
            let frame = ChartFrame::new(c.clone(), x1, x2).expect("two-variable components");
            let det = frame.frame_det();
            let ok = points.iter().all(|p| matches!(det.eval(p), Ok(d) if d.abs() >= T::lit(Self::MIN_FRAME_DET)));
            if ok {
                return frame;
            }
        }
    }

    fn metric<T: Scalar>(&mut self, lorentzian: bool) -> MetricConstants<T> {
        loop {
            let [a11, a12, a22] = [(); 3].map(|_| self.rng.random_range(-2.0..2.0));
            let det: f64 = a11 * a22 - a12 * a12;
            if det.abs() >= 0.25 && (det < 0.0) == lorentzian {
                return MetricConstants::new(T::lit(a11), T::lit(a12), T::lit(a22)).expect("nondegenerate");
            }
        }
    }

    pub fn next_fixture<T: Scalar>(&mut self) -> Fixture<T> {
        let lorentzian = self.produced.is_multiple_of(2);
        let frame = self.frame();
        let metric = self.metric(lorentzian);
        let name = format!("random-{}", self.produced);
        self.produced += 1;
        Fixture { name, frame, metric }
    }
}

impl Iterator for RandomManifolds {
    type Item = Fixture<f64>;

    fn next(&mut self) -> Option<Fixture<f64>> {
        Some(self.next_fixture())
    }
}

/// Random expression tree over two variables, at most `depth` levels deep.
pub fn random_expr<T: Scalar>(rng: &mut impl Rng, depth: usize) -> Expr<T> {
    if depth == 0 || rng.random_bool(0.25) {
        return if rng.random_bool(0.6) {
            Expr::var(rng.random_range(0..2))
        } else {
            Expr::lit((rng.random_range(-2.0..2.0_f64) * 4.0).round() / 4.0)
        };
    }
    match rng.random_range(0..3) {
        0 => {
            let ops = [
                UnaryOp::Neg,
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
            let op = ops[rng.random_range(0..ops.len())];
            Expr::unary(op, random_expr(rng, depth - 1))
        }
        1 => {
            let base = random_expr(rng, depth - 1);
            let exponents = [2.0, 3.0, -1.0, -2.0, 0.5, 1.5, 1.0, 0.0];
            let n = exponents[rng.random_range(0..exponents.len())];
            Expr::binary(BinaryOp::Pow, base, Expr::lit(n))
        }
        _ => {
            let ops = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div];
            let op = ops[rng.random_range(0..ops.len())];
            Expr::binary(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1))
        }
    }
}

/// Evaluates `e` at `point` only if every subexpression stays well away from
/// its singularities (log/sqrt arguments, denominators, tan poles, small bases
/// under negative or fractional powers) and below `1e3` in magnitude, so that
/// finite differences of width `1e-5` are reliable there.
pub fn well_conditioned_value<T: Scalar>(e: &Expr<T>, point: &Point<T>) -> Option<T> {
    let margin = T::lit(0.1);
    let bound = T::lit(1e3);
    let v = match e.node() {
        Node::Const(c) => *c,
        Node::Var(i) => *point.get(*i)?,
        Node::Unary(op, c) => {
            let x = well_conditioned_value(c, point)?;
            match op {
                UnaryOp::Log | UnaryOp::Sqrt if x < margin => return None,
                UnaryOp::Tan if x.cos().abs() < margin => return None,
                _ => {}
            }
            e_unary(*op, x)?
        }
        Node::Binary(op, l, r) => {
            let a = well_conditioned_value(l, point)?;
            let b = well_conditioned_value(r, point)?;
            match op {
                BinaryOp::Div if b.abs() < margin => return None,
                BinaryOp::Pow if (b < T::zero() || !b.fract().is_zero()) && a.abs() < margin => return None,
                BinaryOp::Pow if !b.fract().is_zero() && a < T::zero() => return None,
                _ => {}
            }
            e_binary(*op, a, b)?
        }
    };
    (v.is_finite() && v.abs() <= bound).then_some(v)
}

/// True when the central difference of width `h` along `var` is already
/// converged at `point`: doubling the width changes it by at most
/// `1e-7 * max(1, |D_h|)`, so its own truncation error is far below that.
pub fn difference_is_resolved<T: Scalar>(f: &Expr<T>, var: usize, point: &Point<T>, h: T) -> bool {
    let fd = |width: T| crate::oracle::central_difference(f, var, point, width).ok();
    match (fd(h), fd(h + h)) {
        (Some(a), Some(b)) => (a - b).abs() <= T::lit(1e-7) * T::one().max(a.abs()),
        _ => false,
    }
}

fn e_unary<T: Scalar>(op: UnaryOp, x: T) -> Option<T> {
    Expr::unary(op, Expr::constant(x)).eval(&[]).ok()
}

fn e_binary<T: Scalar>(op: BinaryOp, a: T, b: T) -> Option<T> {
    Expr::binary(op, Expr::constant(a), Expr::constant(b)).eval(&[]).ok()
}
