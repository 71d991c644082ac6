use thiserror::Error;

/// Errors raised across the library.
///
/// Evaluation-time failures that depend on the working precision
/// (`EvalSingular`, `TargetRepresentable`, `InsufficientPrecision`) may go
/// away when the computation is repeated at a higher precision.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("logarithm of a value indistinguishable from zero")]
    LogOfZero,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("parameter indices must be contiguous from a1; a{0} is missing")]
    ParameterGap(usize),
    #[error("division by the literal 0")]
    ZeroDivisor,
    #[error("model expects {expected} parameters, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parameter {index} is zero; parameters range over nonzero integers")]
    InvalidParameter { index: usize },
    #[error("division by a value indistinguishable from zero")]
    EvalSingular,
    #[error("even-order root of a negative value")]
    DomainError,
    #[error("inadmissible approximation: every parameter is ±1")]
    Inadmissible,
    #[error("target is zero")]
    ZeroTarget,
    #[error("model value is zero")]
    ZeroModelValue,
    #[error("target is indistinguishable from the model value at this precision")]
    TargetRepresentable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("value is not irrational: {0}")]
    NotIrrational(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed continued fraction: {0}")]
    MalformedCf(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
