//! Scalar abstraction for the numeric core.
//!
//! Every module in this crate is generic over a floating-point scalar
//! implementing [`Real`]. The crate root exposes `f64` aliases for the
//! intended production precision; `f32` works too, at correspondingly
//! looser tolerances.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable throughout the crate.
pub trait Real: Float + FloatConst + NumAssign + FromPrimitive + Debug + Display + 'static {}

impl<T> Real for T where
    T: Float + FloatConst + NumAssign + FromPrimitive + Debug + Display + 'static
{
}

/// Converts an exactly representable `f64` constant to `R`.
pub(crate) fn from_f64<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("constant must be representable in the scalar type")
}

/// Converts a small index to `R`.
pub(crate) fn from_usize<R: Real>(n: usize) -> R {
    R::from_usize(n).expect("index must be representable in the scalar type")
}

/// One full turn, 2π, in the scalar type.
pub(crate) fn two_pi<R: Real>() -> R {
    R::PI() + R::PI()
}
