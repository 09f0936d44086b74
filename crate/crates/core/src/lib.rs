//! Degenerate Laplace transform and degenerate gamma function toolkit.
//!
//! The degenerate exponential `(1+λt)^{1/λ}` tends to `e^t` as λ → 0, and it
//! induces λ-analogues of the classical Laplace transform and gamma function:
//!
//! - `L_λ(f)(s) = ∫₀^∞ (1+λt)^{-s/λ} f(t) dt`
//! - `Γ_λ(s) = ∫₀^∞ (1+λt)^{-1/λ} t^{s-1} dt` on the strip `0 < s < 1/λ`
//!
//! This crate provides:
//!
//! - [`degenfun`] — pointwise evaluation of every degenerate special function
//!   (powers, trig, hyperbolic, log-powers, Γ_λ via the Beta identity);
//! - [`expr`] — a small expression language for functions of t, with parser,
//!   printer, evaluator, and symbolic t-derivative;
//! - [`symlap`] — rule-based symbolic transforms `L_λ(f)(s)` as closed forms
//!   in s with validity thresholds and rule traces;
//! - [`numlap`] — the numeric oracle: adaptive quadrature for `L_λ` and `Γ_λ`
//!   plus finite-difference s-derivatives;
//! - [`verify`] — an executable adjudication suite that checks every identity
//!   the symbolic layer implements against the quadrature oracle.
//!
//! All core math is generic over the scalar type ([`Real`]: f32 or f64); the
//! aliases below fix f64, which every tolerance in [`verify`] assumes.

pub mod degenfun;
pub mod error;
pub mod scalar;

pub mod expr;
pub mod numlap;
pub mod symlap;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use scalar::{fmt_sig9, rel_err, round_sig9, Real};

/// f64 degeneracy parameter.
pub type Lambda = degenfun::Lambda<f64>;
/// f64 expression tree.
pub type Expr = expr::Expr<f64>;
/// f64 closed form in s.
pub type SExpr = symlap::SExpr<f64>;
/// f64 symbolic transform result.
pub type TransformResult = symlap::TransformResult<f64>;
/// f64 quadrature result.
pub type QuadratureResult = numlap::QuadratureResult<f64>;
