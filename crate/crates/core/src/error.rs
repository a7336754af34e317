use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("cone is not full-dimensional (dim {dim} in rank {rank})")]
    NotFullDimensional { dim: usize, rank: usize },
    #[error("cone is not strictly convex (contains a line)")]
    NotStrictlyConvex,
    #[error("cone is not a face of the given cone")]
    NotAFace,
    #[error("cone is not simplicial ({rays} rays, dim {dim})")]
    NotSimplicial { rays: usize, dim: usize },
    #[error("vector {0} is not a nonnegative combination of the generators")]
    NotDecomposable(String),
    #[error("cell is not part of the triangulation")]
    CellNotInComplex,
    #[error("fan is not closed under taking faces: missing face {0:?}")]
    FanNotFaceClosed(Vec<usize>),
    #[error("denominator vector is zero")]
    ZeroDenominatorVector,
    #[error("grading functional is not positive on the cone")]
    GradingNotPositive,
    #[error("denominator {0} has nonpositive grading")]
    NonPositiveDenominatorGrading(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
