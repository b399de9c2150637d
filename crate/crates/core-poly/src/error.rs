use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("point has {got} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("jet bound must be at least 1")]
    BadJetBound,
    #[error("integer too large for divisor enumeration")]
    TooLarge,
}
