//! Scalar abstraction for the numeric core.
//!
//! Everything numerical in this crate is generic over [`Real`], which is any
//! IEEE-style float that `num_traits` knows how to construct from `f64`
//! constants. In practice this means `f32` or `f64`; the crate root exports
//! `f64` aliases for the common case.

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar usable by the solver core: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Display + Debug + Send + Sync + 'static {
    /// Lift an `f64` constant into this scalar type.
    ///
    /// Panics only if the target type cannot represent ordinary finite
    /// constants, which no supported float does.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant must be representable")
    }

    /// Lift a node/subinterval index into this scalar type.
    #[inline]
    fn of_usize(v: usize) -> Self {
        Self::of(v as f64)
    }

    /// Lossy view as `f64`, for diagnostics and rendering.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Display + Debug + Send + Sync + 'static {}
