//! Numeric oracle: quadrature evaluation of L_λ(f)(s) and Γ_λ(s), growth
//! order estimation, and finite-difference s-derivatives.

mod fd;
mod quad;
mod transform;

pub use fd::{default_step, fd_derivative};
pub use transform::{
    estimate_order, num_deg_gamma, num_transform, num_transform_budgeted, ExponentialOrderBound,
    QuadratureResult, DEFAULT_BUDGET, DEFAULT_TOL,
};
