//! Scalar abstraction: the whole crate is generic over the floating-point
//! type through [`Real`], implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable by every numeric routine in this crate.
///
/// The associated tolerance constants are the working precisions of the
/// covariance-matrix machinery; they scale with the type's precision rather
/// than being uniform, so `f32` instantiations stay usable.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Relative symmetry tolerance accepted by covariance constructors.
    fn symmetry_tol() -> Self;
    /// Relative tolerance for eigenvalue ± pairing defects.
    fn pairing_tol() -> Self;
    /// Default absolute tolerance on symplectic-eigenvalue thresholds.
    fn spectral_tol() -> Self;

    /// Lossless-enough cast from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal must be representable")
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::lit(2.0)
    }
}

impl Real for f64 {
    #[inline]
    fn symmetry_tol() -> Self {
        1e-12
    }
    #[inline]
    fn pairing_tol() -> Self {
        1e-9
    }
    #[inline]
    fn spectral_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    #[inline]
    fn symmetry_tol() -> Self {
        1e-5
    }
    #[inline]
    fn pairing_tol() -> Self {
        1e-3
    }
    #[inline]
    fn spectral_tol() -> Self {
        1e-3
    }
}
