//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar the library is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Complex amplitude: coherent-state labels, expansion coefficients, phase-space points.
pub type Amplitude<T> = Complex<T>;

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// A tolerance that never drops below a few ulps of the working precision,
/// so f64-calibrated thresholds stay meaningful for `f32`.
#[inline]
pub fn tol<T: Real>(x: f64) -> T {
    let floor = T::epsilon() * lit(64.0);
    let t = lit::<T>(x);
    if t > floor {
        t
    } else {
        floor
    }
}

#[inline]
pub fn c<T: Real>(re: T, im: T) -> Amplitude<T> {
    Complex::new(re, im)
}

#[inline]
pub fn creal<T: Real>(re: T) -> Amplitude<T> {
    Complex::new(re, T::zero())
}

pub fn is_finite<T: Real>(z: Amplitude<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `exp(-2|γ|²)`, the overlap ⟨γ|−γ⟩.
pub fn cat_overlap<T: Real>(gamma: Amplitude<T>) -> T {
    (-lit::<T>(2.0) * gamma.norm_sqr()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floor_tracks_precision() {
        assert_eq!(tol::<f64>(1e-12), 1e-12);
        assert!(tol::<f32>(1e-12) > 1e-6);
    }

    #[test]
    fn cat_overlap_at_unit_amplitude() {
        let g = cat_overlap(c(1.0f64, 0.0));
        assert!((g - (-2.0f64).exp()).abs() < 1e-15);
    }
}
