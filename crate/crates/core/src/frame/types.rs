use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{is_identifier, parse_expr, Expr};
use crate::scalar::Scalar;

/// Smallest |det E| accepted at a validation point.
pub const FRAME_EPSILON: f64 = 1e-10;

/// Fraction of each interval trimmed from both ends before sampling.
pub const GRID_INSET: f64 = 1e-6;

pub type Point<T> = [T; 2];

pub(crate) fn point_f64<T: Scalar>(p: &Point<T>) -> [f64; 2] {
    [p[0].to_f64_lossy(), p[1].to_f64_lossy()]
}

/// Two named coordinates and a closed box in which they range.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart<T> {
    vars: [String; 2],
    domain: [(T, T); 2],
}

impl<T: Scalar> Chart<T> {
    pub fn new(vars: [&str; 2], domain: [(T, T); 2]) -> Result<Self> {
        for v in vars {
            if !is_identifier(v) {
                return Err(Error::InvalidChart(format!("`{v}` is not a valid variable name")));
            }
        }
        if vars[0] == vars[1] {
            return Err(Error::InvalidChart(format!("variable `{}` declared twice", vars[0])));
        }
        for (v, (lo, hi)) in vars.iter().zip(domain) {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidChart(format!("empty or non-finite interval for `{v}`")));
            }
        }
        Ok(Chart { vars: vars.map(str::to_owned), domain })
    }

    pub fn vars(&self) -> &[String; 2] {
        &self.vars
    }

    pub fn domain(&self) -> &[(T, T); 2] {
        &self.domain
    }

    pub fn parse(&self, src: &str) -> Result<Expr<T>> {
        Ok(parse_expr(src, &self.vars)?)
    }

    fn inset(&self, axis: usize) -> (T, T) {
        let (lo, hi) = self.domain[axis];
        let pad = (hi - lo) * T::lit(GRID_INSET);
        (lo + pad, hi - pad)
    }

    /// `n x n` uniform grid over the inset box, row-major by the first variable.
    pub fn grid_points(&self, n: usize) -> Vec<Point<T>> {
        assert!(n >= 2, "grid needs at least two points per axis");
        let axis = |k: usize| {
            let (lo, hi) = self.inset(k);
            let step = (hi - lo) / T::lit((n - 1) as f64);
            (0..n).map(move |i| if i == n - 1 { hi } else { lo + step * T::lit(i as f64) })
        };
        axis(0).flat_map(|u| axis(1).map(move |v| [u, v])).collect()
    }

    /// `count` uniform random points in the inset box, reproducible from `seed`.
    pub fn random_points(&self, count: usize, seed: u64) -> Vec<Point<T>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let boxes = [self.inset(0), self.inset(1)].map(|(lo, hi)| (lo.to_f64_lossy(), hi.to_f64_lossy()));
        (0..count)
            .map(|_| boxes.map(|(lo, hi)| T::lit(rng.random_range(lo..=hi))))
            .collect()
    }
}

/// Where "at every point" preconditions are enforced: an `grid x grid` lattice
/// plus `random` seeded interior points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub grid: usize,
    pub random: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { grid: 21, random: 20, seed: 42 }
    }
}

impl Sampling {
    pub fn points<T: Scalar>(&self, chart: &Chart<T>) -> Vec<Point<T>> {
        let mut pts = chart.grid_points(self.grid.max(2));
        pts.extend(chart.random_points(self.random, self.seed));
        pts
    }
}

/// Vector field given by its coordinate components.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<T> {
    pub components: [Expr<T>; 2],
}

impl<T: Scalar> VectorField<T> {
    pub fn new(first: Expr<T>, second: Expr<T>) -> Self {
        VectorField { components: [first, second] }
    }

    pub fn parse(chart: &Chart<T>, src: [&str; 2]) -> Result<Self> {
        Ok(VectorField::new(chart.parse(src[0])?, chart.parse(src[1])?))
    }

    pub fn zero() -> Self {
        VectorField::new(Expr::zero(), Expr::zero())
    }

    /// The field acting on a function: `X f = X^1 df/du^1 + X^2 df/du^2`.
    pub fn apply(&self, f: &Expr<T>) -> Expr<T> {
        &self.components[0] * f.differentiate(0) + &self.components[1] * f.differentiate(1)
    }

    pub fn scale(&self, factor: &Expr<T>) -> Self {
        VectorField::new(factor * &self.components[0], factor * &self.components[1])
    }

    pub fn eval(&self, point: &Point<T>) -> Result<[T; 2]> {
        let at = |e: &Expr<T>| {
            e.eval(point).map_err(|source| Error::Domain { point: point_f64(point), source })
        };
        Ok([at(&self.components[0])?, at(&self.components[1])?])
    }
}

impl<T: Scalar> std::ops::Add for &VectorField<T> {
    type Output = VectorField<T>;
    fn add(self, rhs: Self) -> VectorField<T> {
        VectorField::new(&self.components[0] + &rhs.components[0], &self.components[1] + &rhs.components[1])
    }
}

/// A chart with two vector fields assumed to span every tangent space on it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartFrame<T> {
    pub chart: Chart<T>,
    pub x1: VectorField<T>,
    pub x2: VectorField<T>,
}

impl<T: Scalar> ChartFrame<T> {
    pub fn new(chart: Chart<T>, x1: VectorField<T>, x2: VectorField<T>) -> Result<Self> {
        for c in x1.components.iter().chain(&x2.components) {
            if let Some(i) = c.max_var().filter(|&i| i >= 2) {
                return Err(Error::InvalidChart(format!("component references undeclared variable #{i}")));
            }
        }
        Ok(ChartFrame { chart, x1, x2 })
    }

    /// Builds a frame from component strings in the chart's variables.
    pub fn parse(chart: Chart<T>, x1: [&str; 2], x2: [&str; 2]) -> Result<Self> {
        let x1 = VectorField::parse(&chart, x1)?;
        let x2 = VectorField::parse(&chart, x2)?;
        ChartFrame::new(chart, x1, x2)
    }

    pub fn fields(&self) -> [&VectorField<T>; 2] {
        [&self.x1, &self.x2]
    }

    /// Determinant of the frame matrix whose columns are X1 and X2.
    pub fn frame_det(&self) -> Expr<T> {
        let [p, q] = &self.x1.components;
        let [r, s] = &self.x2.components;
        p * s - r * q
    }

    /// Relabels the frame as (X2, X1).
    pub fn swapped(&self) -> Self {
        ChartFrame { chart: self.chart.clone(), x1: self.x2.clone(), x2: self.x1.clone() }
    }

    /// Fails with `SingularFrame` if |det E| <= FRAME_EPSILON at any sampled point.
    pub fn check_nondegenerate(&self, sampling: &Sampling) -> Result<()> {
        let det = self.frame_det();
        if det.is_zero() {
            return Err(Error::SingularFrame { point: None, det: 0.0 });
        }
        for p in sampling.points(&self.chart) {
            let d = det.eval(&p).map_err(|source| Error::Domain { point: point_f64(&p), source })?;
            if d.is_nan() || d.abs() <= T::lit(FRAME_EPSILON) {
                return Err(Error::SingularFrame { point: Some(point_f64(&p)), det: d.to_f64_lossy() });
            }
        }
        Ok(())
    }
}

/// The constant pairings `g(Xi, Xj)`; `a21` is `a12` by symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricConstants<T> {
    pub a11: T,
    pub a12: T,
    pub a22: T,
}

impl<T: Scalar> MetricConstants<T> {
    pub fn new(a11: T, a12: T, a22: T) -> Result<Self> {
        let m = MetricConstants { a11, a12, a22 };
        let det = m.det();
        if !(det.is_finite() && !det.is_zero()) {
            return Err(Error::DegenerateMetric(det.to_f64_lossy()));
        }
        Ok(m)
    }

    pub fn orthonormal_lorentzian() -> Self {
        MetricConstants { a11: -T::one(), a12: T::zero(), a22: T::one() }
    }

    pub fn det(&self) -> T {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    /// Index one in dimension two.
    pub fn is_lorentzian(&self) -> bool {
        self.det() < T::zero()
    }

    pub fn matrix(&self) -> [[T; 2]; 2] {
        [[self.a11, self.a12], [self.a12, self.a22]]
    }

    /// `g(X_{i+1}, X_{j+1})` for zero-based `i`, `j`.
    pub fn pairing(&self, i: usize, j: usize) -> T {
        self.matrix()[i][j]
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<T> {
        let det = self.det();
        if det.is_zero() || !det.is_finite() {
            return Err(Error::DegenerateMetric(det.to_f64_lossy()));
        }
        Ok(det)
    }

    /// Constants for the relabelled frame (X2, X1).
    pub fn swapped(&self) -> Self {
        MetricConstants { a11: self.a22, a12: self.a12, a22: self.a11 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn chart() -> Chart<f64> {
        Chart::new(["phi", "theta"], [(0.0, TAU), (-1.5, 1.5)]).unwrap()
    }

    #[test]
    fn grid_is_row_major_and_inset() {
        let pts = chart().grid_points(3);
        assert_eq!(pts.len(), 9);
        assert!(pts[0][0] > 0.0 && pts[0][1] > -1.5);
        assert_eq!(pts[0][0], pts[1][0]);
        assert!(pts[1][1] > pts[0][1]);
        assert!(pts[8][0] < TAU && pts[8][1] < 1.5);
        assert_eq!(chart().grid_points(21).len(), 441);
    }

    #[test]
    fn random_points_are_reproducible_and_interior() {
        let c = chart();
        let a = c.random_points(20, 42);
        assert_eq!(a, c.random_points(20, 42));
        assert_ne!(a, c.random_points(20, 43));
        assert!(a.iter().all(|p| p[0] > 0.0 && p[0] < TAU && p[1] > -1.5 && p[1] < 1.5));
    }

    #[test]
    fn chart_validation() {
        assert!(Chart::<f64>::new(["x", "x"], [(0.0, 1.0), (0.0, 1.0)]).is_err());
        assert!(Chart::<f64>::new(["x", "y"], [(1.0, 1.0), (0.0, 1.0)]).is_err());
        assert!(Chart::<f64>::new(["x", "cos"], [(0.0, 1.0), (0.0, 1.0)]).is_err());
    }

    #[test]
    fn metric_constants() {
        assert_eq!(MetricConstants::<f64>::orthonormal_lorentzian().det(), -1.0);
        assert_eq!(MetricConstants::new(-3.0, -1.0, 0.0).unwrap().det(), -1.0);
        let riemannian = MetricConstants::new(2.0, 0.0, 3.0).unwrap();
        assert_eq!(riemannian.det(), 6.0);
        assert!(!riemannian.is_lorentzian());
        assert!(matches!(MetricConstants::new(1.0, 1.0, 1.0), Err(Error::DegenerateMetric(_))));
    }

    #[test]
    fn singular_frame_is_detected() {
        let c = Chart::new(["x", "y"], [(-1.0, 1.0), (-1.0, 1.0)]).unwrap();
        let f = ChartFrame::parse(c.clone(), ["x", "0"], ["0", "1"]).unwrap();
        let sampling = Sampling { grid: 3, random: 0, seed: 1 };
        assert!(matches!(f.check_nondegenerate(&sampling), Err(Error::SingularFrame { point: Some(_), .. })));
        let g = ChartFrame::parse(c.clone(), ["1", "1"], ["2", "2"]).unwrap();
        assert!(matches!(g.check_nondegenerate(&sampling), Err(Error::SingularFrame { .. })));
        let ok = ChartFrame::parse(c, ["1", "0"], ["0", "1"]).unwrap();
        assert!(ok.check_nondegenerate(&sampling).is_ok());
    }

    #[test]
    fn directional_derivative() {
        let c = Chart::new(["x", "y"], [(0.5, 1.0), (0.5, 3.0)]).unwrap();
        let field = VectorField::parse(&c, ["y", "x"]).unwrap();
        let f = c.parse("x^2*y").unwrap();
        // y*2xy + x*x^2
        let v = field.apply(&f).eval(&[0.7, 1.3]).unwrap();
        assert!((v - (2.0 * 0.7 * 1.3 * 1.3 + 0.7_f64.powi(3))).abs() < 1e-14);
    }
}
