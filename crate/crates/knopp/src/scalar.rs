//! Scalar abstraction for the numeric kernels.

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the kernels are generic over: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Conversion from `f64`, panicking on values the type cannot hold.
    fn of_f64(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 value not representable in scalar type")
    }

    fn of_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize not representable in scalar type")
    }

    /// Widening (f64) view of the scalar.
    fn approx_f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("scalar convertible to f64")
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + std::fmt::Debug
        + std::fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Dot product of two equal-length slices.
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Euclidean norm.
pub fn norm2<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Euclidean distance between points.
pub fn dist2<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| {
            let d = x - y;
            acc + d * d
        })
        .sqrt()
}

/// Sup-norm distance between points.
pub fn dist_inf<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_helpers() {
        let a = [3.0f64, 4.0];
        let b = [0.0, 0.0];
        assert_eq!(dot(&a, &a), 25.0);
        assert_eq!(norm2(&a), 5.0);
        assert_eq!(dist2(&a, &b), 5.0);
        assert_eq!(dist_inf(&a, &b), 4.0);
    }

    #[test]
    fn generic_over_f32() {
        let a = [3.0f32, 4.0];
        assert_eq!(norm2(&a), 5.0f32);
        assert_eq!(f32::of_f64(0.5), 0.5f32);
        assert_eq!(0.5f32.approx_f64(), 0.5f64);
    }
}
