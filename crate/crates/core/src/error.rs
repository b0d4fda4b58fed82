use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("bounds do not satisfy the omega ordering; relabel with omega_permutation first")]
    OmegaViolated,

    #[error("grouping choice must be 1, 2 or 3, got {0}")]
    InvalidGrouping(u8),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("constraint references undeclared variable index {0}")]
    UnknownVariable(usize),

    #[error("inequality has no nonzero coefficient")]
    EmptyInequality,

    #[error("region is unbounded in the requested direction")]
    Unbounded,

    #[error("region is empty")]
    Infeasible,

    #[error("simplex failed to reach a verified solution: {0}")]
    SolverFailure(String),

    #[error("sampling box has zero volume")]
    ZeroVolumeSamplingBox,

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("missing bounds: hypergraph has {needed} vertices, bounds cover {got}")]
    MissingBounds { needed: usize, got: usize },

    #[error("direction list is empty")]
    NoDirections,

    #[error("bound set {0} is missing relaxation {1}")]
    MissingRelaxation(usize, String),

    #[error("hull width must be positive for bound set {0}")]
    NonPositiveHullWidth(usize),

    #[error("regression needs at least two points with distinct x values")]
    DegenerateRegression,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
