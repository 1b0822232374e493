//! Independent curvature computation in coordinates.
//!
//! The frame and the constant pairings only serve to assemble the coordinate
//! metric `G = E^-T A E^-1`; from there on everything is the textbook
//! Christoffel/Riemann route, with no use of structural functions.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::expr::{simplify, Expr};
use crate::frame::{ChartFrame, MetricConstants, Point, VectorField, FRAME_EPSILON};
use crate::scalar::Scalar;

pub type Matrix2<T> = [[Expr<T>; 2]; 2];

/// `gamma[k][i][j]` is the Christoffel symbol with upper index `k`.
pub type Christoffels<T> = [[[Expr<T>; 2]; 2]; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMetric<T> {
    pub g: Matrix2<T>,
    pub g_inv: Matrix2<T>,
    pub det_g: Expr<T>,
}

fn k<T: Scalar>(x: T) -> Expr<T> {
    Expr::constant(x)
}

fn domain_err<T: Scalar>(p: &Point<T>) -> impl Fn(crate::expr::DomainError) -> Error + '_ {
    move |source| Error::Domain { point: [p[0].to_f64_lossy(), p[1].to_f64_lossy()], source }
}

/// Coordinate metric of the frame: `G = E^-T A E^-1`, `G^-1 = E A^-1 E^T`,
/// `det G = det A / (det E)^2`, with E the matrix whose columns are X1, X2.
pub fn coordinate_metric<T: Scalar>(frame: &ChartFrame<T>, metric: &MetricConstants<T>) -> Result<CoordinateMetric<T>> {
    let det_a = metric.require_nondegenerate()?;
    let det_e = simplify(&frame.frame_det());
    if det_e.is_zero() {
        return Err(Error::SingularFrame { point: None, det: 0.0 });
    }
    let [p, q] = frame.x1.components.clone();
    let [r, s] = frame.x2.components.clone();
    // E = [[p, r], [q, s]]; adjugate C = [[s, -r], [-q, p]], E^-1 = C / det E.
    let adj = [[s.clone(), -&r], [-&q, p.clone()]];
    let a = metric.matrix();
    let det_e2 = &det_e * &det_e;
    let g = |i: usize, j: usize| {
        let mut sum = Expr::zero();
        for m in 0..2 {
            for n in 0..2 {
                sum = sum + &adj[m][i] * k(a[m][n]) * &adj[n][j];
            }
        }
        simplify(&(sum / &det_e2))
    };
    let e = [[p, r], [q, s]];
    let a_inv = [[metric.a22 / det_a, -metric.a12 / det_a], [-metric.a12 / det_a, metric.a11 / det_a]];
    let g_inv = |i: usize, j: usize| {
        let mut sum = Expr::zero();
        for m in 0..2 {
            for n in 0..2 {
                sum = sum + &e[i][m] * k(a_inv[m][n]) * &e[j][n];
            }
        }
        simplify(&sum)
    };
    let g01 = g(0, 1);
    let gi01 = g_inv(0, 1);
    Ok(CoordinateMetric {
        g: [[g(0, 0), g01.clone()], [g01, g(1, 1)]],
        g_inv: [[g_inv(0, 0), gi01.clone()], [gi01, g_inv(1, 1)]],
        det_g: simplify(&(k(det_a) / det_e2)),
    })
}

/// `Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)`.
pub fn christoffels<T: Scalar>(cm: &CoordinateMetric<T>) -> Christoffels<T> {
    // dg[l][i][j] = d_l g_ij
    let dg: [Matrix2<T>; 2] = [0, 1].map(|l| [0, 1].map(|i| [0, 1].map(|j| simplify(&cm.g[i][j].differentiate(l)))));
    let half = k(T::lit(0.5));
    [0, 1].map(|kk| {
        [0, 1].map(|i| {
            [0, 1].map(|j| {
                let mut sum = Expr::zero();
                for l in 0..2 {
                    let lowered = &dg[i][j][l] + &dg[j][i][l] - &dg[l][i][j];
                    sum = sum + &cm.g_inv[kk][l] * lowered;
                }
                simplify(&(&half * sum))
            })
        })
    })
}

/// Symbolic curvature of the coordinate metric, built once and evaluated per point.
#[derive(Debug, Clone)]
pub struct CoordinateCurvature<T> {
    frame: ChartFrame<T>,
    metric: CoordinateMetric<T>,
    gamma: Christoffels<T>,
    /// `dgamma[v][k][i][j] = d_v Gamma^k_ij`.
    dgamma: [Christoffels<T>; 2],
    /// `g(R_std(d1, d2) d1, d2)` in the standard convention.
    standard_numerator: Expr<T>,
}

impl<T: Scalar> CoordinateCurvature<T> {
    pub fn new(frame: &ChartFrame<T>, constants: &MetricConstants<T>) -> Result<Self> {
        let metric = coordinate_metric(frame, constants)?;
        let gamma = christoffels(&metric);
        let dgamma = [0, 1].map(|v| gamma.clone().map(|m| m.map(|row| row.map(|e| simplify(&e.differentiate(v))))));
        // R^l_{kij} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik,
        // needed only for k = 0, i = 0, j = 1.
        let riemann = |l: usize| {
            let (kk, i, j) = (0, 0, 1);
            let mut r = &dgamma[i][l][j][kk] - &dgamma[j][l][i][kk];
            for m in 0..2 {
                r = r + &gamma[l][i][m] * &gamma[m][j][kk] - &gamma[l][j][m] * &gamma[m][i][kk];
            }
            simplify(&r)
        };
        let r = [riemann(0), riemann(1)];
        let standard_numerator = simplify(&(&metric.g[1][0] * &r[0] + &metric.g[1][1] * &r[1]));
        Ok(CoordinateCurvature { frame: frame.clone(), metric, gamma, dgamma, standard_numerator })
    }

    pub fn metric(&self) -> &CoordinateMetric<T> {
        &self.metric
    }

    pub fn christoffels(&self) -> &Christoffels<T> {
        &self.gamma
    }

    /// `d_var Gamma^k_ij` as symbolic expressions.
    pub fn christoffel_derivatives(&self, var: usize) -> &Christoffels<T> {
        &self.dgamma[var]
    }

    fn check_point(&self, point: &Point<T>) -> Result<T> {
        let det_e = self.frame.frame_det().eval(point).map_err(domain_err(point))?;
        if det_e.is_nan() || det_e.abs() <= T::lit(FRAME_EPSILON) {
            return Err(Error::SingularFrame {
                point: Some([point[0].to_f64_lossy(), point[1].to_f64_lossy()]),
                det: det_e.to_f64_lossy(),
            });
        }
        let det_g = self.metric.det_g.eval(point).map_err(domain_err(point))?;
        if det_g.is_zero() || !det_g.is_finite() {
            return Err(Error::DegenerateMetric(det_g.to_f64_lossy()));
        }
        Ok(det_g)
    }

    /// `K = g(R_{d1 d2} d1, d2) / Q(d1, d2)` with `R_{XY} = D_[X,Y] - [D_X, D_Y]`,
    /// i.e. minus the standard-convention numerator over `det G`.
    pub fn at(&self, point: &Point<T>) -> Result<T> {
        let det_g = self.check_point(point)?;
        let num = self.standard_numerator.eval(point).map_err(domain_err(point))?;
        Ok(-num / det_g)
    }

    /// Same quotient with the standard sign convention for `R`; the negative of [`Self::at`].
    pub fn at_standard_convention(&self, point: &Point<T>) -> Result<T> {
        let det_g = self.check_point(point)?;
        let num = self.standard_numerator.eval(point).map_err(domain_err(point))?;
        Ok(num / det_g)
    }
}

/// Sectional curvature at `point` from the coordinate metric alone.
pub fn k_oracle<T: Scalar>(frame: &ChartFrame<T>, metric: &MetricConstants<T>, point: &Point<T>) -> Result<T> {
    CoordinateCurvature::new(frame, metric)?.at(point)
}

/// `(f(x + h e_var) - f(x - h e_var)) / 2h`.
pub fn central_difference<T: Scalar>(f: &Expr<T>, var: usize, point: &Point<T>, h: T) -> Result<T> {
    let mut plus = *point;
    let mut minus = *point;
    plus[var] = plus[var] + h;
    minus[var] = minus[var] - h;
    let fp = f.eval(&plus).map_err(domain_err(&plus))?;
    let fm = f.eval(&minus).map_err(domain_err(&minus))?;
    Ok((fp - fm) / (h + h))
}

/// Christoffel symbols from central differences of `G`, for cross-checking.
pub fn christoffels_by_differences<T: Scalar>(cm: &CoordinateMetric<T>, point: &Point<T>, h: T) -> Result<[[[T; 2]; 2]; 2]> {
    let mut dg = [[[T::zero(); 2]; 2]; 2];
    for (l, slab) in dg.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                slab[i][j] = central_difference(&cm.g[i][j], l, point, h)?;
            }
        }
    }
    let mut g_inv = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g_inv[i][j] = cm.g_inv[i][j].eval(point).map_err(domain_err(point))?;
        }
    }
    let half = T::lit(0.5);
    let mut out = [[[T::zero(); 2]; 2]; 2];
    for (kk, block) in out.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = T::zero();
                for l in 0..2 {
                    sum = sum + g_inv[kk][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                block[i][j] = half * sum;
            }
        }
    }
    Ok(out)
}

/// Left-invariant frame on a two-dimensional Lie group with `[X1, X2] = -X1`,
/// carrying the Lorentzian metric pulled back through `B = (a, b; c, d)`:
/// `a11 = c^2 - a^2`, `a12 = cd - ab`, `a22 = d^2 - b^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeftInvariantFixture<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> LeftInvariantFixture<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let f = LeftInvariantFixture { a, b, c, d };
        if f.det_b().is_zero() {
            return Err(Error::PreconditionViolated("matrix B must be invertible".into()));
        }
        Ok(f)
    }

    pub fn det_b(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    /// Induced constants; `det A = -(det B)^2 < 0`.
    pub fn metric(&self) -> MetricConstants<T> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        MetricConstants { a11: c * c - a * a, a12: c * d - a * b, a22: d * d - b * b }
    }

    /// `K = a11 / (det B)^2`.
    pub fn expected_curvature(&self) -> T {
        self.metric().a11 / (self.det_b() * self.det_b())
    }
}

/// Constant combination `alpha X + gamma Y`.
pub fn combine<T: Scalar>(alpha: T, x: &VectorField<T>, gamma: T, y: &VectorField<T>) -> VectorField<T> {
    let c = |i: usize| k(alpha) * &x.components[i] + k(gamma) * &y.components[i];
    VectorField::new(c(0), c(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ads_coordinate_metric() {
        let f = fixtures::anti_de_sitter::<f64>();
        let cm = coordinate_metric(&f.frame, &f.metric).unwrap();
        for t in [-1.2, 0.0, 0.7] {
            let p = [2.0, t];
            assert!((cm.g[0][0].eval(&p).unwrap() + t.cosh().powi(2)).abs() < 1e-12);
            assert!(cm.g[0][1].eval(&p).unwrap().abs() < 1e-14);
            assert!((cm.g[1][1].eval(&p).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_frame_metric_is_constant() {
        let m = MetricConstants::new(0.5, -1.25, 2.0).unwrap();
        let f = fixtures::flat::<f64>(m);
        let cm = coordinate_metric(&f.frame, &m).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 1)] {
            assert_eq!(cm.g[i][j].as_const(), Some(m.pairing(i, j)));
        }
        let gamma = christoffels(&cm);
        assert!(gamma.iter().flatten().flatten().all(Expr::is_zero));
        assert_eq!(k_oracle(&f.frame, &m, &[0.1, 0.2]).unwrap(), 0.0);
    }

    #[test]
    fn y_frame_metric() {
        let frame = fixtures::y_frame::<f64>([1.0, 0.0, 0.0, 1.0]);
        let cm = coordinate_metric(&frame, &MetricConstants::orthonormal_lorentzian()).unwrap();
        for y in [0.5, 1.0, 2.5] {
            let p = [0.0, y];
            assert!((cm.g[0][0].eval(&p).unwrap() + 1.0 / (y * y)).abs() < 1e-14);
            assert!((cm.g[1][1].eval(&p).unwrap() - 1.0 / (y * y)).abs() < 1e-14);
            assert!(cm.g[0][1].eval(&p).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn metric_times_inverse_is_identity() {
        let f = fixtures::RandomManifolds::new(11).next().unwrap();
        let cm = coordinate_metric(&f.frame, &f.metric).unwrap();
        for p in f.frame.chart.random_points(10, 1) {
            for i in 0..2 {
                for j in 0..2 {
                    let v: f64 = (0..2)
                        .map(|m| cm.g[i][m].eval(&p).unwrap() * cm.g_inv[m][j].eval(&p).unwrap())
                        .sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-9, "{i}{j}: {v}");
                }
            }
        }
    }

    #[test]
    fn christoffels_symmetric_and_match_differences() {
        let f = fixtures::anti_de_sitter::<f64>();
        let cm = coordinate_metric(&f.frame, &f.metric).unwrap();
        let gamma = christoffels(&cm);
        for p in f.frame.chart.random_points(20, 2) {
            let fd = christoffels_by_differences(&cm, &p, 1e-5).unwrap();
            for kk in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        let s = gamma[kk][i][j].eval(&p).unwrap();
                        assert_eq!(s, gamma[kk][j][i].eval(&p).unwrap());
                        assert!((s - fd[kk][i][j]).abs() <= 1e-6 * s.abs().max(1.0));
                    }
                }
            }
            // Gamma^theta_{phi phi} = cosh(theta) sinh(theta) for g = -cosh^2 dphi^2 + dtheta^2
            let t = p[1];
            assert!((gamma[1][0][0].eval(&p).unwrap() - t.cosh() * t.sinh()).abs() < 1e-12);
        }
    }

    #[test]
    fn ads_oracle_and_sign_convention() {
        let f = fixtures::anti_de_sitter::<f64>();
        let curv = CoordinateCurvature::new(&f.frame, &f.metric).unwrap();
        for p in f.frame.chart.grid_points(5) {
            assert!((curv.at(&p).unwrap() + 1.0).abs() < 1e-8);
            assert!((curv.at_standard_convention(&p).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn left_invariant_oracle() {
        let fx = LeftInvariantFixture::new(2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(fx.expected_curvature(), -3.0);
        assert_eq!(fx.metric().det(), -(fx.det_b() * fx.det_b()));
        let frame = fixtures::x_frame::<f64>();
        for p in frame.chart.random_points(10, 4) {
            assert!((k_oracle(&frame, &fx.metric(), &p).unwrap() + 3.0).abs() < 1e-8);
        }
        assert!(LeftInvariantFixture::new(1.0, 2.0, 2.0, 4.0).is_err());
    }

    #[test]
    fn christoffel_derivatives_match_differences() {
        let f = fixtures::RandomManifolds::new(5).nth(2).unwrap();
        let curv = CoordinateCurvature::new(&f.frame, &f.metric).unwrap();
        for p in f.frame.chart.random_points(5, 8) {
            for v in 0..2 {
                let d = curv.christoffel_derivatives(v);
                for kk in 0..2 {
                    for i in 0..2 {
                        for j in 0..2 {
                            let s = d[kk][i][j].eval(&p).unwrap();
                            let fd = central_difference(&curv.christoffels()[kk][i][j], v, &p, 1e-5).unwrap();
                            assert!((s - fd).abs() <= 1e-5 * s.abs().max(1.0), "{s} vs {fd}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn singular_point_is_reported() {
        let c = crate::frame::Chart::new(["x", "y"], [(-1.0, 1.0), (-1.0, 1.0)]).unwrap();
        let frame = ChartFrame::parse(c, ["1 + x", "0"], ["0", "1"]).unwrap();
        let m = MetricConstants::orthonormal_lorentzian();
        assert!(matches!(k_oracle(&frame, &m, &[-1.0, 0.0]), Err(Error::SingularFrame { .. })));
        assert!(k_oracle(&frame, &m, &[0.0, 0.0]).is_ok());
    }
}
