//! Expression language for functions of t: tree, parser, printer,
//! pointwise evaluator, and symbolic t-derivative.

mod ast;
mod parse;
mod print;

pub use ast::Expr;
pub use parse::parse;
