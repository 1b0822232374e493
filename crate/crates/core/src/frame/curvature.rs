//! Sectional curvature of the plane spanned by the frame.
//!
//! Curvature convention: `R_{XY} Z = D_{[X,Y]} Z - [D_X, D_Y] Z`, and
//! `K = g(R_{X1 X2} X1, X2) / Q(X1, X2)` with `Q = a11 a22 - a12^2`.
//! This is the negative of the other widespread sign convention for `R`,
//! but combined with the argument order above it yields the usual `K`.

use super::connection::{connection_ab, frame_connection, ConnectionData, FrameVector, StructuralFunctions};
use super::types::{ChartFrame, MetricConstants, Sampling};
use crate::error::{Error, Result};
use crate::expr::{simplify, Expr};
use crate::scalar::Scalar;

/// `R_{X1 X2} X1 = (xi1 X1 + xi2 X2) / det A`.
#[derive(Debug, Clone, PartialEq)]
pub struct XiPair<T> {
    pub xi1: Expr<T>,
    pub xi2: Expr<T>,
}

fn k<T: Scalar>(x: T) -> Expr<T> {
    Expr::constant(x)
}

/// `Q(X1, X2) = g(X1,X1) g(X2,X2) - g(X1,X2)^2`.
pub fn q_value<T: Scalar>(metric: &MetricConstants<T>) -> T {
    metric.det()
}

/// `c1 A + c2 B - X1 B + X2 A`, the common bracket of both xi.
fn xi_bracket<T: Scalar>(frame: &ChartFrame<T>, c: &StructuralFunctions<T>, a: &Expr<T>, b: &Expr<T>) -> Expr<T> {
    &c.c1 * a + &c.c2 * b - frame.x1.apply(b) + frame.x2.apply(a)
}

/// Closed-form `xi1 = a12 [ (c1 A + c2 B) - X1 B + X2 A ]`,
/// `xi2 = a11 [ -(c1 A + c2 B) + X1 B - X2 A ]`.
pub fn xi_closed_form<T: Scalar>(
    metric: &MetricConstants<T>,
    frame: &ChartFrame<T>,
    c: &StructuralFunctions<T>,
) -> XiPair<T> {
    let (a, b) = connection_ab(metric, c);
    let bracket = simplify(&xi_bracket(frame, c, &a, &b));
    XiPair {
        xi1: simplify(&(k(metric.a12) * &bracket)),
        xi2: simplify(&(k(metric.a11) * -&bracket)),
    }
}

/// Expands `R_{X1 X2} X1 = D_{[X1,X2]} X1 - D_{X1} D_{X2} X1 + D_{X2} D_{X1} X1`
/// using the frame connection, and returns `det A` times its frame coefficients.
pub fn riemann_frame_components<T: Scalar>(
    metric: &MetricConstants<T>,
    frame: &ChartFrame<T>,
    c: &StructuralFunctions<T>,
    conn: &ConnectionData<T>,
) -> Result<XiPair<T>> {
    let det = metric.require_nondegenerate()?;
    let r = riemann_x1(frame, c, conn);
    Ok(XiPair { xi1: simplify(&(k(det) * &r[0])), xi2: simplify(&(k(det) * &r[1])) })
}

fn riemann_x1<T: Scalar>(frame: &ChartFrame<T>, c: &StructuralFunctions<T>, conn: &ConnectionData<T>) -> FrameVector<T> {
    let e1: FrameVector<T> = [Expr::one(), Expr::zero()];
    let bracket: FrameVector<T> = [c.c1.clone(), c.c2.clone()];
    let along_bracket = conn.covariant_along_combination(frame, &bracket, &e1);
    let d2x1 = conn.derivative(1, 0).clone();
    let d1x1 = conn.derivative(0, 0).clone();
    let d1d2 = conn.covariant(frame, 0, &d2x1);
    let d2d1 = conn.covariant(frame, 1, &d1x1);
    [0, 1].map(|m| simplify(&(&along_bracket[m] - &d1d2[m] + &d2d1[m])))
}

fn k_from_xi<T: Scalar>(metric: &MetricConstants<T>, xi: &XiPair<T>) -> Result<Expr<T>> {
    let det = metric.require_nondegenerate()?;
    let num = k(metric.a12) * &xi.xi1 + k(metric.a22) * &xi.xi2;
    Ok(simplify(&(num / k(det * det))))
}

/// `K = (a12 xi1 + a22 xi2) / (det A)^2` with xi from the closed form.
pub fn k_closed_form<T: Scalar>(
    metric: &MetricConstants<T>,
    frame: &ChartFrame<T>,
    c: &StructuralFunctions<T>,
) -> Result<Expr<T>> {
    metric.require_nondegenerate()?;
    k_from_xi(metric, &xi_closed_form(metric, frame, c))
}

/// Full derivation: commutator, structural functions, connection, the
/// expanded curvature operator, then `K = g(R_{X1 X2} X1, X2) / Q`.
pub fn k_pipeline<T: Scalar>(metric: &MetricConstants<T>, frame: &ChartFrame<T>, sampling: &Sampling) -> Result<Expr<T>> {
    let (c, conn) = frame_connection(metric, frame, sampling)?;
    let xi = riemann_frame_components(metric, frame, &c, &conn)?;
    let det = metric.require_nondegenerate()?;
    // R X1 = (xi1 X1 + xi2 X2) / det, paired with X2 through the constants.
    let g_rx1_x2 = (k(metric.a12) * &xi.xi1 + k(metric.a22) * &xi.xi2) / k(det);
    Ok(simplify(&(g_rx1_x2 / k(q_value(metric)))))
}

/// Orthonormal Lorentzian frame (`a11 = -1, a12 = 0, a22 = 1`):
/// `K = -c1^2 + c2^2 - X2 c1 - X1 c2`.
pub fn k_orthonormal<T: Scalar>(frame: &ChartFrame<T>, c: &StructuralFunctions<T>) -> Expr<T> {
    let e = -(&c.c1 * &c.c1) + &c.c2 * &c.c2 - frame.x2.apply(&c.c1) - frame.x1.apply(&c.c2);
    simplify(&e)
}

fn orthogonal_numerator<T: Scalar>(metric: &MetricConstants<T>, frame: &ChartFrame<T>, c: &StructuralFunctions<T>) -> Result<Expr<T>> {
    if !metric.a12.is_zero() {
        return Err(Error::PreconditionViolated(format!("orthogonal frame requires a12 = 0, got {}", metric.a12)));
    }
    metric.require_nondegenerate()?;
    let (a11, a22) = (k(metric.a11), k(metric.a22));
    Ok(-(&a11 * &c.c1 * &c.c1) - &a22 * &c.c2 * &c.c2 - &a11 * frame.x2.apply(&c.c1) + &a22 * frame.x1.apply(&c.c2))
}

/// Orthogonal frame (`a12 = 0`):
/// `K = [-a11 c1^2 - a22 c2^2 - a11 X2 c1 + a22 X1 c2] / (a11 a22)`.
pub fn k_orthogonal<T: Scalar>(
    metric: &MetricConstants<T>,
    frame: &ChartFrame<T>,
    c: &StructuralFunctions<T>,
) -> Result<Expr<T>> {
    let num = orthogonal_numerator(metric, frame, c)?;
    Ok(simplify(&(num / k(metric.a11 * metric.a22))))
}

/// The orthogonal-frame formula with denominator `a11` alone. It agrees with
/// [`k_orthogonal`] only when `a22 = 1`; elsewhere it is off by the factor `a22`.
pub fn k_orthogonal_a11<T: Scalar>(
    metric: &MetricConstants<T>,
    frame: &ChartFrame<T>,
    c: &StructuralFunctions<T>,
) -> Result<Expr<T>> {
    let num = orthogonal_numerator(metric, frame, c)?;
    Ok(simplify(&(num / k(metric.a11))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::frame::connection::{commutator, covariant_derivatives, structural_functions};

    fn assert_const_on(e: &Expr<f64>, pts: &[[f64; 2]], want: f64, tol: f64) {
        for p in pts {
            let v = e.eval(p).unwrap();
            assert!((v - want).abs() <= tol, "at {p:?}: {v} vs {want}");
        }
    }

    fn structural(frame: &ChartFrame<f64>) -> StructuralFunctions<f64> {
        structural_functions(frame, &commutator(frame), &Sampling::default()).unwrap()
    }

    #[test]
    fn q_values() {
        assert_eq!(q_value(&MetricConstants::<f64>::orthonormal_lorentzian()), -1.0);
        assert_eq!(q_value(&MetricConstants::new(-3.0, -1.0, 0.0).unwrap()), -1.0);
        assert_eq!(q_value(&MetricConstants::new(2.0, 0.0, 3.0).unwrap()), 6.0);
    }

    #[test]
    fn ads_xi_and_curvature() {
        let f = fixtures::anti_de_sitter::<f64>();
        let c = structural(&f.frame);
        let pts = f.frame.chart.grid_points(7);
        let xi = xi_closed_form(&f.metric, &f.frame, &c);
        assert_const_on(&xi.xi1, &pts, 0.0, 1e-14);
        assert_const_on(&xi.xi2, &pts, -1.0, 1e-12);

        let conn = {
            let (a, b) = connection_ab(&f.metric, &c);
            covariant_derivatives(&f.metric, &a, &b).unwrap()
        };
        let expanded = riemann_frame_components(&f.metric, &f.frame, &c, &conn).unwrap();
        assert_const_on(&expanded.xi1, &pts, 0.0, 1e-12);
        assert_const_on(&expanded.xi2, &pts, -1.0, 1e-12);

        assert_const_on(&k_closed_form(&f.metric, &f.frame, &c).unwrap(), &pts, -1.0, 1e-9);
        assert_const_on(&k_pipeline(&f.metric, &f.frame, &Sampling::default()).unwrap(), &pts, -1.0, 1e-9);
        assert_const_on(&k_orthonormal(&f.frame, &c), &pts, -1.0, 1e-9);
        assert_const_on(&k_orthogonal(&f.metric, &f.frame, &c).unwrap(), &pts, -1.0, 1e-9);
    }

    #[test]
    fn zero_structural_functions_give_zero() {
        let f = fixtures::flat::<f64>(MetricConstants::new(1.5, -0.25, -2.0).unwrap());
        let c = StructuralFunctions::constant(0.0, 0.0);
        let xi = xi_closed_form(&f.metric, &f.frame, &c);
        assert!(xi.xi1.is_zero() && xi.xi2.is_zero());
        assert!(k_closed_form(&f.metric, &f.frame, &c).unwrap().is_zero());
        assert!(k_pipeline(&f.metric, &f.frame, &Sampling::default()).unwrap().is_zero());
        assert!(k_orthonormal(&f.frame, &c).is_zero());
        let ortho = fixtures::flat::<f64>(MetricConstants::new(3.0, 0.0, -0.5).unwrap());
        assert!(k_orthogonal(&ortho.metric, &ortho.frame, &c).unwrap().is_zero());
    }

    #[test]
    fn left_invariant_xi() {
        let fx = crate::oracle::LeftInvariantFixture::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let m = fx.metric();
        let frame = fixtures::x_frame::<f64>();
        let c = structural(&frame);
        let pts = frame.chart.grid_points(5);
        let xi = xi_closed_form(&m, &frame, &c);
        assert_const_on(&xi.xi1, &pts, m.a11 * m.a12, 1e-12);
        assert_const_on(&xi.xi2, &pts, -m.a11 * m.a11, 1e-12);
        assert_const_on(&k_closed_form(&m, &frame, &c).unwrap(), &pts, -3.0, 1e-12);
    }

    #[test]
    fn y_frame_orthonormal_formula() {
        let frame = fixtures::x_frame::<f64>();
        let (gamma, delta) = (1.5, -0.5);
        let c = StructuralFunctions::constant(-delta, gamma);
        let got = k_orthonormal(&frame, &c);
        assert_eq!(got.as_const(), Some(gamma * gamma - delta * delta));
    }

    #[test]
    fn orthogonal_rejects_off_diagonal() {
        let f = fixtures::flat::<f64>(MetricConstants::new(-1.0, 0.5, 1.0).unwrap());
        let c = StructuralFunctions::constant(0.0, 0.0);
        assert!(matches!(k_orthogonal(&f.metric, &f.frame, &c), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn orthogonal_reduces_to_orthonormal() {
        let f = fixtures::anti_de_sitter::<f64>();
        let c = structural(&f.frame);
        let a = k_orthogonal(&f.metric, &f.frame, &c).unwrap();
        let b = k_orthonormal(&f.frame, &c);
        for p in f.frame.chart.random_points(25, 9) {
            assert!((a.eval(&p).unwrap() - b.eval(&p).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn scaled_ads_orthogonal_frame() {
        let f = fixtures::anti_de_sitter_scaled::<f64>(2.0);
        assert_eq!(f.metric.a11, -4.0);
        let c = structural(&f.frame);
        let pts = f.frame.chart.grid_points(6);
        assert_const_on(&k_orthogonal(&f.metric, &f.frame, &c).unwrap(), &pts, -1.0, 1e-9);
        assert_const_on(&k_closed_form(&f.metric, &f.frame, &c).unwrap(), &pts, -1.0, 1e-9);
        for p in &pts {
            let oracle = crate::oracle::k_oracle(&f.frame, &f.metric, p).unwrap();
            assert!((oracle + 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn degenerate_metric_errors() {
        let f = fixtures::flat::<f64>(MetricConstants::orthonormal_lorentzian());
        let bad = MetricConstants { a11: 2.0, a12: 2.0, a22: 2.0 };
        let c = StructuralFunctions::constant(1.0, 0.0);
        assert!(matches!(k_closed_form(&bad, &f.frame, &c), Err(Error::DegenerateMetric(_))));
        assert!(matches!(k_pipeline(&bad, &f.frame, &Sampling::default()), Err(Error::DegenerateMetric(_))));
    }
}
