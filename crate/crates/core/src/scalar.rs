use std::fmt::{Debug, Display};

use num_traits::Float;

/// Edge-cost scalar. Infinity stands for "unreachable".
pub trait Scalar: Float + Default + Debug + Display + Send + Sync + 'static {
    #[inline]
    fn from_usize(n: usize) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("usize fits in a float")
    }

    #[inline]
    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("finite f64 converts")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl<T: Float + Default + Debug + Display + Send + Sync + 'static> Scalar for T {}

/// Total order for heap keys; costs are never NaN.
#[inline]
pub(crate) fn cmp<C: Scalar>(a: C, b: C) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
}
