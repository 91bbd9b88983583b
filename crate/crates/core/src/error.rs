use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,

    #[error("irrational pole: factor {factor} has no rational linear factorization")]
    IrrationalPole { factor: String },

    #[error("series truncation exhausted: {0}")]
    TruncationExhausted(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("non-simple ramification at z = {point}")]
    NonSimpleRamification { point: String },

    #[error("deck transformation did not converge at z = {point} by order {order}")]
    DeckNotConverged { point: String, order: usize },

    #[error("residue-freeness violated: {0}")]
    ResidueFreeness(String),

    #[error("PATH_UNAVAILABLE: {0}")]
    PathUnavailable(String),

    #[error("UNSUPPORTED_DUAL: {0}")]
    UnsupportedDual(String),

    #[error("unknown curve '{0}'")]
    UnknownCurve(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degree ({u}, {hbar}) outside series bounds ({max_u}, {max_hbar})")]
    OutOfBounds {
        u: usize,
        hbar: usize,
        max_u: usize,
        max_hbar: usize,
    },

    #[error("complexity guard: {0}")]
    ComplexityGuard(String),
}
