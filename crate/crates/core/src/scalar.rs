//! Scalar abstraction: all core math is generic over [`Real`] (f32 or f64).

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar for the core math: f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    /// Widens to `f64` (exact for f32/f64).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Formats `x` with at most 9 significant digits, using the shortest
/// decimal representation of the rounded value ("0.1", "4", "3.96825397").
///
/// All user-facing numeric output goes through this so that identical
/// invocations produce byte-identical text on every platform.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.8e}").parse().expect("9-digit round trip");
    format!("{rounded}")
}

/// Rounds `x` to 9 significant digits (the JSON counterpart of [`fmt_sig9`]).
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("9-digit round trip")
}

/// Relative difference |a - b| / max(|a|, |b|), zero when both are zero.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
