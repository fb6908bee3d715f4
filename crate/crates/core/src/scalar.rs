use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar used throughout the crate: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts an index or count into the scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Apéry's constant ζ(3).
    #[inline]
    fn zeta3() -> Self {
        Self::lit(1.202_056_903_159_594_2)
    }

    /// Relative accuracy floor for tolerances: a few hundred ulps.
    #[inline]
    fn tolerance_floor() -> Self {
        Self::epsilon() * Self::lit(200.0)
    }
}

impl Real for f32 {}
impl Real for f64 {}
