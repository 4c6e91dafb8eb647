use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("bad evaluation point: {0}")]
    BadPoint(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("too many indeterminates (at most {0} are supported)")]
    TooManyVariables(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid tensor position: {0}")]
    Position(String),

    #[error("operator is not invertible")]
    Singular,

    #[error("D-matrix system is singular: solution space has dimension {nullity}")]
    DMatrixSingular { nullity: usize },

    #[error("D-matrix system is inconsistent")]
    DMatrixInconsistent,

    #[error("input is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("no admissible evaluation point found after {0} attempts")]
    NoAdmissiblePoint(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Input(String),
}
