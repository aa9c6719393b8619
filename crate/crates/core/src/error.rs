use thiserror::Error;

/// Errors raised by the lattice, cone, fan and arc kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no primitive representative of the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis is not of full rank")]
    NotFullRank,
    #[error("lattice is not contained in the proposed superlattice")]
    NotContained,
    #[error("vector is not a member of the lattice")]
    NotInLattice,
    #[error("cone is not simplicial: triangulate first")]
    NotSimplicial,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("vector does not lie in the cone")]
    NotInCone,
    #[error("vector lies outside the support of the fan")]
    OutsideSupport,
    #[error("not a face of the cone")]
    NotAFace,
    #[error("cones do not meet in a common face")]
    NotAFan,
    #[error("avoidance failed after exploring {nodes} nodes")]
    AvoidanceFailed { nodes: usize },
    #[error("the ray is an essential divisor and appears on every resolution")]
    Unavoidable,
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("negative exponent composed with a series of positive order (pole)")]
    Pole,
    #[error("series of positive order has no inverse")]
    NotInvertible,
    #[error("zero series")]
    ZeroSeries,
    #[error("insufficient transcendence: no independent index tuple exists")]
    InsufficientTranscendence,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("postcondition failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
