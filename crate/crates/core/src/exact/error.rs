use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("pole: {var} = 0 where it appears with a negative exponent")]
    Pole { var: String },
    #[error("no value assigned to variable {0}")]
    Unassigned(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("negative exponent on ambient variable {0}")]
    NegativeAmbientExponent(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorIndex { index: usize, count: usize },
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("division by zero")]
    DivisionByZero,
}
