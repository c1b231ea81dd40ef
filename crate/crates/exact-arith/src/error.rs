use thiserror::Error;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// A parameter that must be prime was not.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A Laurent matrix was inverted whose determinant is not a unit of the Laurent ring.
    #[error("determinant {det} is not a unit of the Laurent ring")]
    NonUnitDeterminant { det: String },
    /// A rational matrix was singular.
    #[error("matrix is singular")]
    Singular,
    /// Shapes do not fit together.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A coefficient vector did not have the length required by its conductor.
    #[error("conductor {m} needs {expected} coefficients, got {got}")]
    BadCoefficientLength { m: u64, expected: usize, got: usize },
    /// A variable had no value during evaluation.
    #[error("no value supplied for variable {0}")]
    UnboundVariable(String),
    /// An element expected to be rational was not.
    #[error("value is not rational: {0}")]
    NotRational(String),
    /// Text could not be parsed.
    #[error("cannot parse {0:?}")]
    Parse(String),
}
