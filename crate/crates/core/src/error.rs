use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: {0} vs {1}")]
    MixedField(String, String),
    #[error("root of order {order} unavailable in {field}")]
    OrderUnavailable { order: u64, field: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("elements belong to different Hopf algebras")]
    ParentMismatch,
    #[error("no antipode table")]
    NoAntipode,
    #[error("characteristic conflict: {0}")]
    CharacteristicConflict(String),
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("operation requires {expected}, got {got}")]
    WrongFamily { expected: String, got: String },
    #[error("R-matrix spec does not match family: {0}")]
    FamilyMismatch(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unsupported cobar degree {0}")]
    UnsupportedDegree(usize),
    #[error("R is not quasitriangular: {0}")]
    NotQuasitriangular(String),
    #[error("element is not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("{0}! is not invertible in the field")]
    FactorialNotInvertible(usize),
    #[error("quantization hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Hopf axioms violated: {0}")]
    AxiomsViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
