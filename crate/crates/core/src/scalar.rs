//! Scalar abstraction shared by every model.
//!
//! The propagation and geometry code is written once against [`Scalar`] and
//! instantiated for `f64` (the default everywhere) and `f32`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable by the models: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    fn lit(x: f64) -> Self;

    /// Lossy conversion to `f64`, used for diagnostics and output.
    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}
