//! Scalar abstraction shared by the numeric modules.
//!
//! Everything that manipulates amplitudes or observables is written against
//! [`Real`], so the same code runs in `f32` or `f64`. The crate root exposes
//! `f64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable for state vectors and observables.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Absolute tolerance used to recognise `±1/√2ⁿ` amplitudes and unit norms.
    const AMPLITUDE_TOL: f64;

    /// Converts an `f64` literal. Never fails for finite inputs.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const AMPLITUDE_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const AMPLITUDE_TOL: f64 = 1e-4;
}

/// Complex number over a [`Real`].
pub type Cplx<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> Cplx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn czero<T: Real>() -> Cplx<T> {
    Complex::new(T::zero(), T::zero())
}
