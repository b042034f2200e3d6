use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("ambient dimension {0} exceeds the supported maximum of {max}", max = crate::exterior::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("repeated index {0} in a monomial")]
    RepeatedIndex(usize),
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("Jacobi identity fails (d^2 e{0} != 0)")]
    JacobiFailure(usize),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is abelian; no canonical shear line")]
    Abelian,
    #[error("alpha(X) = {0}, expected 1")]
    AlphaNormalization(String),
    #[error("transfer constant a must be nonzero")]
    ZeroTransferConstant,
    #[error("span of X is not an ideal: X contracted into d({0}) is nonzero")]
    NotAnIdeal(String),
    #[error("invalid construction data: {0}")]
    InvalidShear(String),
    #[error("invalid twist data: {0}")]
    InvalidTwist(String),
    #[error("matrix is not a complex structure (J^2 != -1)")]
    NotComplexStructure,
    #[error("odd dimension {0}")]
    OddDimension(usize),
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("search space of {size} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
