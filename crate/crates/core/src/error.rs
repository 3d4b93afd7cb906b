use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator `{denominator}` vanishes under the substitution")]
    Pole { denominator: String },
    #[error("reduction exceeded the step budget of {budget} rewrites")]
    BudgetExceeded { budget: u64 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid rule `{lhs}`: {reason}")]
    InvalidRule { lhs: String, reason: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("invalid factorisation: {0}")]
    InvalidFactorisation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("R-matrix does not satisfy the Yang-Baxter equation")]
    YbeFailure,
    #[error("R-matrix is not biinvertible: {0}")]
    NotBiinvertible(String),
    #[error("Hopf axiom failure: {0}")]
    AxiomFailure(String),
    #[error("construction failure: {0}")]
    ConstructionFailure(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
