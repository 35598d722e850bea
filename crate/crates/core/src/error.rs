use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported shape: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("expected a vector of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("vector is not in the lattice: {0}")]
    NotInLattice(String),
    #[error("quotient element is not central: {0}")]
    NotCentral(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("pairing {pairing} has denominator not dividing the order {order}")]
    Denominator { pairing: String, order: i64 },
    #[error("characters live on different root data")]
    DatumMismatch,
    #[error("formal symbol {0} has no numeric value")]
    FormalSymbol(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
