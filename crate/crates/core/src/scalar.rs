//! Scalar abstraction shared by every module.
//!
//! All geometry is written against [`Real`], which is implemented for `f32`
//! and `f64`. The tolerances quoted throughout the crate are tuned for `f64`;
//! [`Real::tol`] clamps them to a small multiple of machine epsilon so the same
//! code paths stay meaningful at single precision.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal representable")
    }

    /// Converts a count or index.
    #[inline]
    fn of(n: usize) -> Self {
        Self::lit(n as f64)
    }

    /// A tolerance of `x`, never tighter than `16 * epsilon`.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(16.0);
        Self::lit(x).max(floor)
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `sqrt(-1)` for a given scalar.
#[inline]
pub fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Real number lifted into the complex plane.
#[inline]
pub fn cr<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
