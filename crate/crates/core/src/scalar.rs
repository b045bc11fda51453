//! Scalar abstractions shared by every module.
//!
//! Exact constructions (generators, integer bilinear identities) only need a
//! signed ring such as `i64`; everything that differentiates, normalizes or
//! exponentiates is written against [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, One, Zero};

/// Minimal ring structure used by [`crate::linalg::Mat`].
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Debug + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Signed scalar usable as the component type of complex matrices:
/// `i64` for exact identities, `f32`/`f64` for numerics.
pub trait Scalar: Clone + Debug + PartialEq + num_traits::Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + num_traits::Num + Neg<Output = T> {}

/// Real scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number with a real scalar part.
pub type C<T> = Complex<T>;

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// Imaginary unit for any signed ring.
#[inline]
pub fn imag_unit<T: Clone + num_traits::Num>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Lossless lift of an exact complex integer into a floating complex.
pub fn from_exact<T: Real>(z: Complex<i64>) -> C<T> {
    Complex::new(
        T::from_i64(z.re).expect("small integer"),
        T::from_i64(z.im).expect("small integer"),
    )
}
