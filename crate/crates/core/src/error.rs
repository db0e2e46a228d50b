use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes: factor {factor}")]
    Pole { factor: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("lattice mismatch")]
    LatticeMismatch,

    #[error("generator change is singular")]
    SingularTransform,

    #[error("PBW matrix singular at degree {degree}: vanishing factor {factor}")]
    SingularPbw { degree: usize, factor: String },

    #[error("coefficient is not polynomial: {coefficient}")]
    Integrality { coefficient: String },

    #[error("line specialization with seed {seed} drops rank; retry with a new seed")]
    DegenerateLine { seed: u64 },

    #[error("B1 and B2 do not commute")]
    NonCommuting,
}

pub type Result<T> = std::result::Result<T, Error>;
