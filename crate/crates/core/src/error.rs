use thiserror::Error;

use crate::io::{ParseError, ValidationError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("scalars from different fields were mixed")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different variable sets ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },
    #[error("matrix rows are not all of length {0}")]
    Ragged(usize),
    #[error("the zero form has no degree")]
    ZeroForm,
    #[error("form is not homogeneous")]
    Inhomogeneous,
    #[error("degree {degree} outside the admissible range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field characteristic {p} must exceed the socle degree {socle}")]
    CharacteristicTooSmall { p: u64, socle: u32 },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("cannot decompose form: {0}")]
    Decompose(String),
    #[error("form violates the expected structure: no w*z^b - g in the ideal with b <= {0}")]
    NoDistinguishedGenerator(u32),
    #[error("minimal generator found in degree {degree} beyond the truncation bound")]
    Truncation { degree: u32 },
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("infeasible shape: {0}")]
    InfeasibleShape(String),
}

impl Error {
    /// True for errors caused by the input rather than by the engine.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Truncation { .. } | Error::Consistency(_))
    }
}
