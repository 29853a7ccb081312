//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the crate is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a tolerance stated for double precision into one usable at
    /// this precision. Single precision cannot resolve `1e-10`, so its
    /// tolerances are floored.
    fn tol(t: f64) -> Self;

    /// Lossless-enough literal conversion used for constants.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    #[inline]
    fn tol(t: f64) -> Self {
        t
    }
}

impl Real for f32 {
    #[inline]
    fn tol(t: f64) -> Self {
        t.max(1e-4) as f32
    }
}

/// Tolerance constants, stated for `f64`.
pub mod tolerance {
    /// Hermiticity, orthogonality and reconstruction checks (max-abs entry).
    pub const STRUCTURAL: f64 = 1e-9;
    /// Hermiticity / unit-trace acceptance for density matrices.
    pub const DENSITY: f64 = 1e-10;
    /// Smallest eigenvalue still accepted as non-negative.
    pub const PSD_FLOOR: f64 = 1e-10;
    /// Ensemble weights must sum to one within this.
    pub const WEIGHT_SUM: f64 = 1e-12;
    /// A single-qubit Bloch vector may exceed unit length by this much.
    pub const BLOCH: f64 = 1e-12;
    /// HS coefficients below this are treated as absent by `is_mds`.
    pub const MDS: f64 = 1e-10;
}
