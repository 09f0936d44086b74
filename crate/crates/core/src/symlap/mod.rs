//! Rule-based symbolic computation of L_λ(f)(s) as a closed form in s.

mod rules;
mod sexpr;

pub use rules::{
    convergence_threshold, sexpr_diff, shift, transform, transform_derivative, TransformResult,
};
pub(crate) use rules::term_shape;
pub use sexpr::SExpr;
