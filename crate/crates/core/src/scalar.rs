use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point type the metric and statistics code is generic over.
///
/// Implemented for `f32` and `f64`. Distribution tails (Student-t, F, normal)
/// are evaluated in `f64` and converted back.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossless for `f64`, rounding for `f32`.
    fn of(value: f64) -> Self;

    fn of_usize(value: usize) -> Self {
        Self::of(value as f64)
    }

    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn of(value: f64) -> Self {
        value as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn of(value: f64) -> Self {
        value
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

pub(crate) fn mean<T: Scalar>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().copied().sum::<T>() / T::of_usize(values.len()))
}

/// Sample standard deviation (n - 1 denominator); zero for fewer than two values.
pub(crate) fn sample_sd<T: Scalar>(values: &[T]) -> Option<T> {
    let m = mean(values)?;
    if values.len() < 2 {
        return Some(T::zero());
    }
    let ss: T = values.iter().map(|&v| (v - m) * (v - m)).sum();
    Some((ss / T::of_usize(values.len() - 1)).sqrt())
}
