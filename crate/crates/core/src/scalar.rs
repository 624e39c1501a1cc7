use core::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Numeric type a network can carry its rate coefficients in.
///
/// Implemented for `f64` (solver paths) and [`crate::Rational`] (exact
/// inverse-kinetic construction and polynomial round trips).
pub trait Scalar:
    Num + Signed + Copy + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Magnitude at or below which an aggregated coefficient counts as zero.
    fn zero_tolerance() -> Self;

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn zero_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for crate::Rational {
    fn zero_tolerance() -> Self {
        num_traits::Zero::zero()
    }
}
