use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type {kind}{rank}")]
    InvalidType { kind: String, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("elements belong to different root systems")]
    SystemMismatch,
    #[error("linear map does not permute the roots")]
    NotAnAutomorphism,
    #[error("point {0} lies on a wall")]
    OnWall(String),
    #[error("not a chamber of the subsystem: {0}")]
    NotAChamber(String),
    #[error("root {0} is not in the facet subsystem")]
    RootNotInSubsystem(usize),
    #[error("element does not stabilize the facet")]
    FacetNotStable,
    #[error("alcove closure does not contain the facet")]
    NotAdjacent,
    #[error("no chamber of the restricted subsystem is stable under the linear part")]
    NoStableChamber,
    #[error("vector is not dominant: {0}")]
    NotDominant(String),
    #[error("automorphism does not stabilize the dominant chamber")]
    NotDiagram,
    #[error("element is not in the affine Weyl group")]
    NotInAffineWeylGroup,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
