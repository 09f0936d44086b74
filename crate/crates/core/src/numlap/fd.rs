//! Finite-difference s-derivatives with one Richardson extrapolation step.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Central-difference derivative of order n ∈ {0, 1, 2} of a callable at s,
/// with one Richardson extrapolation level. `n = 0` returns `f(s)`.
///
/// Errors from the callable (for example a stencil point leaving the
/// validity half-plane) propagate unchanged.
pub fn fd_derivative<T: Real, F>(mut f: F, s: T, n: u32, h: T) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    if h <= T::zero() {
        return Err(Error::Domain(format!("step size must be positive, got {h}")));
    }
    match n {
        0 => f(s),
        1 => {
            let two = T::of(2.0);
            let d = |h: T, f: &mut F| -> Result<T> { Ok((f(s + h)? - f(s - h)?) / (two * h)) };
            let coarse = d(h, &mut f)?;
            let fine = d(h / two, &mut f)?;
            Ok((T::of(4.0) * fine - coarse) / T::of(3.0))
        }
        2 => {
            let two = T::of(2.0);
            let fs = f(s)?;
            let d = |h: T, f: &mut F| -> Result<T> {
                Ok((f(s + h)? - two * fs + f(s - h)?) / (h * h))
            };
            let coarse = d(h, &mut f)?;
            let fine = d(h / two, &mut f)?;
            Ok((T::of(4.0) * fine - coarse) / T::of(3.0))
        }
        _ => Err(Error::Domain(format!(
            "finite differences support derivative orders 0, 1, 2; got {n}"
        ))),
    }
}

/// Default step size for derivatives of transforms evaluated near s.
pub fn default_step<T: Real>(s: T) -> T {
    T::of(1e-4).max(T::of(1e-3) * s.abs())
}
