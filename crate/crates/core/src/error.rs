use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower mismatch: {0}")]
    TowerMismatch(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("unsupported tower for {0}")]
    UnsupportedTower(&'static str),
    #[error("zero element not allowed: {0}")]
    ZeroElement(&'static str),
    #[error("insufficient precision after {0} coefficients")]
    InsufficientPrecision(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("odd-dimensional form")]
    OddDimension,
    #[error("form has nontrivial Arf invariant")]
    NontrivialArf,
    #[error("not an extension of the source field")]
    NotAnExtension,
    #[error("squares of the extension do not lie in the base field")]
    SquaresNotInBase,
    #[error("Frobenius image of the class is nontrivial")]
    FrobeniusNontrivial,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
