use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported group shape: {0}")]
    UnsupportedShape(String),

    #[error("subgroup is not normalized by element {0}")]
    NotInvariant(u32),

    #[error("set of holomorph elements is not closed under composition")]
    NotASubgroup,

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("relation violated for element {0} of the complement")]
    RelationViolated(u32),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("undefined table cell: {0}")]
    UndefinedCell(String),

    #[error("non-integral Hopf-Galois count: {numerator}/{denominator}")]
    NonIntegral { numerator: u128, denominator: u128 },

    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
