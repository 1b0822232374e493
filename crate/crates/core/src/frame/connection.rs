//! Commutator, structural functions and the Levi-Civita connection in the frame.

use super::types::{ChartFrame, MetricConstants, Sampling, VectorField};
use crate::error::Result;
use crate::expr::{simplify, Expr};
use crate::scalar::Scalar;

/// Coordinate components of `[X1, X2]`:
/// `[X1,X2]^k = sum_j X1^j d_j X2^k - X2^j d_j X1^k`.
pub fn commutator<T: Scalar>(frame: &ChartFrame<T>) -> VectorField<T> {
    let comp = |k: usize| simplify(&(frame.x1.apply(&frame.x2.components[k]) - frame.x2.apply(&frame.x1.components[k])));
    VectorField::new(comp(0), comp(1))
}

/// `c1`, `c2` with `[X1, X2] = c1 X1 + c2 X2`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralFunctions<T> {
    pub c1: Expr<T>,
    pub c2: Expr<T>,
}

impl<T: Scalar> StructuralFunctions<T> {
    pub fn new(c1: Expr<T>, c2: Expr<T>) -> Self {
        StructuralFunctions { c1, c2 }
    }

    pub fn constant(c1: T, c2: T) -> Self {
        StructuralFunctions::new(Expr::constant(c1), Expr::constant(c2))
    }

    pub fn get(&self, k: usize) -> &Expr<T> {
        match k {
            0 => &self.c1,
            1 => &self.c2,
            _ => panic!("structural function index {k} out of range"),
        }
    }
}

/// Solves `E c = [X1, X2]` by Cramer's rule, `E` having columns X1, X2.
pub fn structural_functions<T: Scalar>(
    frame: &ChartFrame<T>,
    comm: &VectorField<T>,
    sampling: &Sampling,
) -> Result<StructuralFunctions<T>> {
    frame.check_nondegenerate(sampling)?;
    let det = simplify(&frame.frame_det());
    let [p, q] = &frame.x1.components;
    let [r, s] = &frame.x2.components;
    let [u, v] = &comm.components;
    let c1 = simplify(&((u * s - r * v) / &det));
    let c2 = simplify(&((p * v - u * q) / &det));
    Ok(StructuralFunctions::new(c1, c2))
}

/// `A = a11 c1 + a12 c2`, `B = a12 c1 + a22 c2`.
pub fn connection_ab<T: Scalar>(metric: &MetricConstants<T>, c: &StructuralFunctions<T>) -> (Expr<T>, Expr<T>) {
    let k = |x: T| Expr::constant(x);
    let a = k(metric.a11) * &c.c1 + k(metric.a12) * &c.c2;
    let b = k(metric.a12) * &c.c1 + k(metric.a22) * &c.c2;
    (simplify(&a), simplify(&b))
}

/// A vector field written in the frame: `coeffs[0] X1 + coeffs[1] X2`.
pub type FrameVector<T> = [Expr<T>; 2];

/// The connection in the frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionData<T> {
    pub a: Expr<T>,
    pub b: Expr<T>,
    /// `derivs[i][j]` holds the frame coefficients of `D_{X_{i+1}} X_{j+1}`.
    pub derivs: [[FrameVector<T>; 2]; 2],
}

impl<T: Scalar> ConnectionData<T> {
    pub fn derivative(&self, along: usize, of: usize) -> &FrameVector<T> {
        &self.derivs[along][of]
    }

    /// `g(D_{Xi} Xj, Xk)` rebuilt from the stored coefficients and constants.
    pub fn pairing(&self, metric: &MetricConstants<T>, i: usize, j: usize, k: usize) -> Expr<T> {
        let d = &self.derivs[i][j];
        let term = |m: usize| Expr::constant(metric.pairing(m, k)) * &d[m];
        simplify(&(term(0) + term(1)))
    }

    /// `D_{Xi}(w1 X1 + w2 X2) = sum_j (Xi w_j) X_j + w_j D_{Xi} X_j`.
    pub fn covariant(&self, frame: &ChartFrame<T>, along: usize, w: &FrameVector<T>) -> FrameVector<T> {
        let field = frame.fields()[along];
        let dx = &self.derivs[along];
        let coeff = |m: usize| field.apply(&w[m]) + &w[0] * &dx[0][m] + &w[1] * &dx[1][m];
        [coeff(0), coeff(1)]
    }

    /// `D_V W` for `V = v1 X1 + v2 X2`, which is linear over functions in `V`.
    pub fn covariant_along_combination(
        &self,
        frame: &ChartFrame<T>,
        v: &FrameVector<T>,
        w: &FrameVector<T>,
    ) -> FrameVector<T> {
        let d1 = self.covariant(frame, 0, w);
        let d2 = self.covariant(frame, 1, w);
        [&v[0] * &d1[0] + &v[1] * &d2[0], &v[0] * &d1[1] + &v[1] * &d2[1]]
    }
}

/// The four covariant derivatives of the frame fields:
///
/// ```text
/// D_{X1} X1 = (A / det) (a12 X1 - a11 X2)     D_{X1} X2 = (A / det) (a22 X1 - a12 X2)
/// D_{X2} X1 = (B / det) (a12 X1 - a11 X2)     D_{X2} X2 = (B / det) (a22 X1 - a12 X2)
/// ```
///
/// They follow from the Koszul formula, whose metric-derivative terms vanish
/// for constant pairings, leaving `g(D_i X_j, X_k)` = 0, -A, A, 0, 0, -B, B, 0.
pub fn covariant_derivatives<T: Scalar>(
    metric: &MetricConstants<T>,
    a: &Expr<T>,
    b: &Expr<T>,
) -> Result<ConnectionData<T>> {
    let det = metric.require_nondegenerate()?;
    let k = |x: T| Expr::constant(x / det);
    let first = [k(metric.a12), -k(metric.a11)];
    let second = [k(metric.a22), -k(metric.a12)];
    let along = |f: &Expr<T>| {
        [
            [simplify(&(f * &first[0])), simplify(&(f * &first[1]))],
            [simplify(&(f * &second[0])), simplify(&(f * &second[1]))],
        ]
    };
    Ok(ConnectionData { a: a.clone(), b: b.clone(), derivs: [along(a), along(b)] })
}

/// Builds `StructuralFunctions` and `ConnectionData` in one go.
pub fn frame_connection<T: Scalar>(
    metric: &MetricConstants<T>,
    frame: &ChartFrame<T>,
    sampling: &Sampling,
) -> Result<(StructuralFunctions<T>, ConnectionData<T>)> {
    metric.require_nondegenerate()?;
    let comm = commutator(frame);
    let c = structural_functions(frame, &comm, sampling)?;
    let (a, b) = connection_ab(metric, &c);
    let conn = covariant_derivatives(metric, &a, &b)?;
    Ok((c, conn))
}
