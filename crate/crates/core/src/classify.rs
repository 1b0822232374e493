//! Constancy check on sampled curvature and the model-space name for
//! Lorentzian surfaces of constant curvature.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelSpace {
    /// Constant `K > 0`.
    DeSitter,
    /// Constant `K = 0`.
    Minkowski,
    /// Constant `K < 0`.
    AntiDeSitter,
    NonConstant,
    NotLorentzian,
}

impl ModelSpace {
    pub fn name(self) -> &'static str {
        match self {
            ModelSpace::DeSitter => "DeSitter",
            ModelSpace::Minkowski => "Minkowski",
            ModelSpace::AntiDeSitter => "AntiDeSitter",
            ModelSpace::NonConstant => "NonConstant",
            ModelSpace::NotLorentzian => "NotLorentzian",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationVerdict<T> {
    pub kind: ModelSpace,
    /// Mean of the samples; `None` when the samples are not constant.
    pub k_value: Option<T>,
    /// `max - min` over the samples.
    pub spread: T,
}

/// Samples count as constant when `max - min <= 2 tol`. For Lorentzian input
/// the sign of the mean then picks de Sitter (`> tol`), Minkowski (`|K| <= tol`)
/// or anti-de Sitter (`< -tol`).
pub fn classify<T: Scalar>(samples: &[T], lorentzian: bool, tol: T) -> Result<ClassificationVerdict<T>> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::PreconditionViolated(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi, mut sum) = (T::infinity(), T::neg_infinity(), T::zero());
    for &k in samples {
        lo = lo.min(k);
        hi = hi.max(k);
        sum = sum + k;
    }
    let spread = hi - lo;
    let mean = sum / T::lit(samples.len() as f64);
    let constant = spread <= tol + tol;
    let kind = match (constant, lorentzian) {
        (false, _) => ModelSpace::NonConstant,
        (true, false) => ModelSpace::NotLorentzian,
        (true, true) if mean > tol => ModelSpace::DeSitter,
        (true, true) if mean < -tol => ModelSpace::AntiDeSitter,
        (true, true) => ModelSpace::Minkowski,
    };
    Ok(ClassificationVerdict { kind, k_value: constant.then_some(mean), spread })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anti_de_sitter_samples() {
        let v = classify(&[-1.0; 100], true, 1e-6).unwrap();
        assert_eq!(v.kind, ModelSpace::AntiDeSitter);
        assert_eq!(v.k_value, Some(-1.0));
        assert_eq!(v.spread, 0.0);
    }

    #[test]
    fn zero_is_minkowski() {
        assert_eq!(classify(&[0.0; 10], true, 1e-6).unwrap().kind, ModelSpace::Minkowski);
        assert_eq!(classify(&[2.5e-7, -3e-7], true, 1e-6).unwrap().kind, ModelSpace::Minkowski);
    }

    #[test]
    fn positive_is_de_sitter() {
        assert_eq!(classify(&[0.5, 0.5], true, 1e-6).unwrap().kind, ModelSpace::DeSitter);
    }

    #[test]
    fn spread_beyond_tolerance_is_non_constant() {
        let v = classify(&[0.0, 1.0], true, 1e-6).unwrap();
        assert_eq!(v.kind, ModelSpace::NonConstant);
        assert_eq!(v.spread, 1.0);
        assert_eq!(v.k_value, None);
    }

    #[test]
    fn riemannian_skips_naming() {
        let v = classify(&[3.0, 3.0], false, 1e-6).unwrap();
        assert_eq!(v.kind, ModelSpace::NotLorentzian);
        assert_eq!(v.k_value, Some(3.0));
        assert_eq!(classify(&[3.0, 4.0], false, 1e-6).unwrap().kind, ModelSpace::NonConstant);
    }

    #[test]
    fn rejects_empty_and_bad_tolerance() {
        assert_eq!(classify::<f64>(&[], true, 1e-6), Err(Error::EmptyInput));
        assert!(classify(&[1.0], true, 0.0).is_err());
    }
}
