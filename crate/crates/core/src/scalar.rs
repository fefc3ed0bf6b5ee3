//! Floating point abstraction shared by every solver.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar used throughout the crate: `f32` or `f64`.
///
/// The associated tolerances scale with the precision of the type. `f64` is
/// the reference precision; `f32` exists for memory-bound batch work and uses
/// correspondingly looser tolerances.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Default slack for coverage and battery checks.
    const COVER_TOL: Self;
    /// Residual bound for root finding.
    const ROOT_TOL: Self;

    /// Converts an `f64` literal. Panics only on values the type cannot hold.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Lossy conversion used for error reporting and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self^alpha`, exact for small integral exponents.
    fn pow_alpha(self, alpha: Self) -> Self {
        if alpha == Self::one() {
            self
        } else if alpha.fract() == Self::zero() && alpha <= Self::lit(64.0) {
            self.powi(alpha.to_i32().unwrap_or(1))
        } else {
            self.powf(alpha)
        }
    }

    /// `self^(1/alpha)` for `self >= 0`, using the dedicated roots where they exist.
    fn root_alpha(self, alpha: Self) -> Self {
        if self <= Self::zero() {
            return Self::zero();
        }
        if alpha == Self::one() {
            self
        } else if alpha == Self::lit(2.0) {
            self.sqrt()
        } else if alpha == Self::lit(3.0) {
            self.cbrt()
        } else {
            self.powf(alpha.recip())
        }
    }
}

impl Scalar for f32 {
    const COVER_TOL: Self = 1e-5;
    const ROOT_TOL: Self = 1e-6;
}

impl Scalar for f64 {
    const COVER_TOL: Self = 1e-9;
    const ROOT_TOL: Self = 1e-12;
}
