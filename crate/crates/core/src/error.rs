//! Error types shared across the crate.

/// Errors produced while parsing expression text.
///
/// Every variant carries the byte offset into the input at which the
/// problem was detected.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    /// `t^alpha` requires `alpha > -1` so the transform integral exists at 0.
    #[error("exponent {alpha} at byte {position} is out of range: powers of t require an exponent > -1")]
    ExponentOutOfRange { position: usize, alpha: f64 },
    #[error("log1p_l exponent at byte {position} must be a non-negative integer")]
    NonIntegerLogPower { position: usize },
    #[error("function argument at byte {position} must be linear in t (of the form a*t)")]
    NonLinearArgument { position: usize },
}

impl ParseError {
    /// Byte offset at which the error was detected.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::ExponentOutOfRange { position, .. }
            | ParseError::NonIntegerLogPower { position }
            | ParseError::NonLinearArgument { position } => *position,
        }
    }
}

/// Errors from evaluation, transformation, quadrature, and verification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("transform diverges: {0}")]
    Divergence(String),
    #[error("tolerance not reached: requested {requested:.3e}, achieved {achieved:.3e} after {evaluations} integrand evaluations")]
    ToleranceNotReached {
        requested: f64,
        achieved: f64,
        evaluations: u64,
    },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("derivative not defined at t = 0: {0}")]
    NonDifferentiableAtZero(String),
    #[error("unknown check id: {0}")]
    UnknownCheckId(String),
    #[error("parameter outside check domain: {0}")]
    ParameterOutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
