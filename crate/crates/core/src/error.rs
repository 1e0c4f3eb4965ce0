use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("sublattice span mismatch")]
    SpanMismatch,
    #[error("linearly dependent input")]
    Dependent,
    #[error("vectors do not generate a sublattice of the given lattice")]
    NotSublattice,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("carrier does not cover cycle")]
    NotCovered,
    #[error("function not linear on carrier")]
    NotLinear,
    #[error("carrier is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("point is not in the relative interior of the cell")]
    NotInRelativeInterior,
    #[error("point or ray does not lie in the support of the cycle")]
    NotInSupport,
    #[error("non-integral weight {0}")]
    NonIntegralWeight(String),
    #[error("support violation: {0}")]
    Support(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Failures of an internal self-check, as opposed to bad input.
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}
