//! Pointwise evaluation of the degenerate special functions.
//!
//! The building block is the degenerate power `(1+λt)^{a/λ}`, which tends to
//! `e^{at}` as λ → 0. Everything else — the degenerate trigonometric and
//! hyperbolic functions and the degenerate gamma function — is defined in
//! terms of it. λ = 0 is admitted as an exact classical branch in every
//! function rather than as a numerical limit, so classical values can serve
//! as exact test targets.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The degeneracy parameter λ ≥ 0.
///
/// λ > 0 selects the degenerate branch; λ = 0 selects the exact classical
/// limit of every function in this module.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Lambda<T>(T);

impl<T: Real> Lambda<T> {
    /// Validates λ: finite and non-negative.
    pub fn new(value: T) -> Result<Self> {
        if !value.is_finite() || value < T::zero() {
            return Err(Error::Domain(format!(
                "lambda must be finite and >= 0, got {value}"
            )));
        }
        Ok(Lambda(value))
    }

    /// The classical branch λ = 0.
    pub fn classical() -> Self {
        Lambda(T::zero())
    }

    pub fn value(self) -> T {
        self.0
    }

    /// True on the classical branch λ = 0.
    pub fn is_classical(self) -> bool {
        self.0 == T::zero()
    }
}

/// Degenerate power `(1+λt)^{a/λ}`, the λ-analogue of `e^{at}`.
///
/// Computed as `exp((a/λ)·ln_1p(λt))` so small `λt` loses no accuracy;
/// returns `e^{at}` exactly on the classical branch.
pub fn deg_pow<T: Real>(lam: Lambda<T>, a: T, t: T) -> Result<T> {
    let l = lam.value();
    if T::one() + l * t <= T::zero() {
        return Err(Error::Domain(format!("1 + lambda*t must be positive, got lambda={l}, t={t}")));
    }
    let v = if lam.is_classical() {
        (a * t).exp()
    } else {
        ((a / l) * (l * t).ln_1p()).exp()
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "degenerate power overflowed at lambda={l}, a={a}, t={t}"
        )))
    }
}

/// Degenerate cosine and sine of `a·t`: the real and imaginary parts of the
/// polar form `(1+λt)^{ia/λ}`, i.e. `cos θ` and `sin θ` with
/// `θ = (a/λ)·ln(1+λt)` (θ = a·t on the classical branch).
pub fn deg_trig<T: Real>(lam: Lambda<T>, a: T, t: T) -> Result<(T, T)> {
    let l = lam.value();
    if T::one() + l * t <= T::zero() {
        return Err(Error::Domain(format!("1 + lambda*t must be positive, got lambda={l}, t={t}")));
    }
    let theta = if lam.is_classical() {
        a * t
    } else {
        (a / l) * (l * t).ln_1p()
    };
    Ok((theta.cos(), theta.sin()))
}

/// Degenerate hyperbolic cosine and sine of `a·t`: the even and odd
/// combinations of `(1+λt)^{±a/λ}`.
pub fn deg_hyp<T: Real>(lam: Lambda<T>, a: T, t: T) -> Result<(T, T)> {
    if lam.is_classical() {
        let (c, s) = ((a * t).cosh(), (a * t).sinh());
        if !c.is_finite() {
            return Err(Error::Overflow(format!(
                "hyperbolic overflow at a={a}, t={t}"
            )));
        }
        return Ok((c, s));
    }
    let p = deg_pow(lam, a, t)?;
    let q = deg_pow(lam, -a, t)?;
    let half = T::of(0.5);
    Ok((half * (p + q), half * (p - q)))
}

/// `(ln(1+λt))^n`. On the classical branch this is the literal λ → 0 limit:
/// 1 for n = 0 and 0 for n ≥ 1.
pub fn log1p_pow<T: Real>(lam: Lambda<T>, n: u32, t: T) -> T {
    if n == 0 {
        return T::one();
    }
    if lam.is_classical() {
        return T::zero();
    }
    (lam.value() * t).ln_1p().powi(n as i32)
}

// Lanczos approximation constants (g = 7, n = 9).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn lanczos_sum<T: Real>(z: T) -> T {
    let mut sum = T::of(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum = sum + T::of(c) / (z + T::of((i + 1) as f64));
    }
    sum
}

/// Natural logarithm of the classical gamma function, ln Γ(x), for x > 0.
///
/// Lanczos approximation in log space; the reflection formula covers
/// x < 1/2. Good to a few ulps over the range used here.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // !(x > 0) also rejects NaN
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    let half = T::of(0.5);
    if x < half {
        // ln Γ(x) = ln(π / sin(πx)) − ln Γ(1−x)
        let pi = T::of(std::f64::consts::PI);
        return Ok(pi.ln() - (pi * x).sin().ln() - log_gamma(T::one() - x)?);
    }
    let z = x - T::one();
    let t = z + T::of(LANCZOS_G) + half;
    let ln_sqrt_2pi = T::of(0.9189385332046727); // ln(2π)/2
    Ok(ln_sqrt_2pi + (z + half) * t.ln() - t + lanczos_sum(z).ln())
}

/// A validated point of the degenerate gamma domain: `0 < s < 1/λ` for
/// λ > 0, and `s > 0` on the classical branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaDomainPoint<T> {
    lambda: Lambda<T>,
    s: T,
}

impl<T: Real> GammaDomainPoint<T> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // !(s > 0) also rejects NaN
    pub fn new(lambda: Lambda<T>, s: T) -> Result<Self> {
        if !(s > T::zero()) {
            return Err(Error::Domain(format!(
                "degenerate gamma requires s > 0, got s={s}"
            )));
        }
        if !lambda.is_classical() && s >= T::one() / lambda.value() {
            return Err(Error::Domain(format!(
                "degenerate gamma requires s < 1/lambda, got s={s}, lambda={}",
                lambda.value()
            )));
        }
        Ok(GammaDomainPoint { lambda, s })
    }

    pub fn lambda(self) -> Lambda<T> {
        self.lambda
    }

    pub fn s(self) -> T {
        self.s
    }
}

/// Degenerate gamma function Γ_λ(s) on the strip 0 < s < 1/λ.
///
/// Evaluated through the Beta-function identity
/// `Γ_λ(s) = λ^{-s} Γ(s) Γ(1/λ - s) / Γ(1/λ)`, entirely in log space so the
/// three log-gamma terms combine before a single exponentiation (1/λ can be
/// large). Returns classical Γ(s) on the classical branch.
///
/// # Example
///
/// ```
/// use deglap::degenfun::{deg_gamma, Lambda};
///
/// // Γ_{0.1}(3) = 2!/(0.9·0.8·0.7)
/// let g = deg_gamma(Lambda::new(0.1f64).unwrap(), 3.0).unwrap();
/// assert!((g - 3.968253968253968).abs() < 1e-12);
/// ```
pub fn deg_gamma<T: Real>(lam: Lambda<T>, s: T) -> Result<T> {
    let point = GammaDomainPoint::new(lam, s)?;
    let (lam, s) = (point.lambda(), point.s());
    if lam.is_classical() {
        return Ok(log_gamma(s)?.exp());
    }
    let l = lam.value();
    let inv = T::one() / l;
    let log_val = -s * l.ln() + log_gamma(s)? + log_gamma(inv - s)? - log_gamma(inv)?;
    let v = log_val.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "degenerate gamma overflowed at lambda={l}, s={s}"
        )))
    }
}

/// Γ_λ(k) for integer k ≥ 1 as the product form
/// `(k-1)! / ((1-λ)(1-2λ)···(1-kλ))`, valid for λ < 1/k.
pub fn deg_gamma_int<T: Real>(lam: Lambda<T>, k: u32) -> Result<T> {
    if k == 0 {
        return Err(Error::Domain("degenerate gamma product form requires k >= 1".into()));
    }
    let l = lam.value();
    if !lam.is_classical() && T::of(k as f64) * l >= T::one() {
        return Err(Error::Domain(format!(
            "degenerate gamma product form requires k*lambda < 1, got k={k}, lambda={l}"
        )));
    }
    let mut num = T::one();
    for j in 1..k {
        num = num * T::of(j as f64);
    }
    let mut den = T::one();
    for j in 1..=k {
        den = den * (T::one() - T::of(j as f64) * l);
    }
    Ok(num / den)
}
