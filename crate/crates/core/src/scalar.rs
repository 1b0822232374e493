//! Floating-point scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar type the expression kernel and curvature code are generic over.
///
/// Implemented for `f32` and `f64`. All reported tolerances assume `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the target type cannot
    /// represent finite doubles at all (never the case for `f32`/`f64`).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `|a - b| / max(1, |a|, |b|)`: relative deviation that degrades to absolute near zero.
pub fn rel_deviation<T: Scalar>(a: T, b: T) -> T {
    let scale = T::one().max(a.abs()).max(b.abs());
    (a - b).abs() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_deviation_is_absolute_below_one() {
        assert_eq!(rel_deviation(0.25_f64, 0.5), 0.25);
        assert_eq!(rel_deviation(100.0_f64, 101.0), 1.0 / 101.0);
        assert_eq!(rel_deviation(-3.0_f32, -3.0), 0.0);
    }
}
