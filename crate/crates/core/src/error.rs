use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Copy, Clone, Debug, Eq, PartialEq, Hash)]
pub enum ErrorCategory {
    /// Malformed or inconsistent input data.
    Input,
    /// A divisorial-fan or fan axiom is violated.
    Axiom,
    /// The input is well formed but outside the domain of the requested computation.
    Precondition,
    /// Two independent computations disagree; this is a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate ray: the zero vector has no primitive generator")]
    ZeroVector,

    #[error("dimension mismatch: expected rank {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a polyhedron needs at least one point")]
    EmptyPointSet,

    #[error("cone is not strongly convex (it contains a line)")]
    NotStronglyConvex,

    #[error("{0} is not a vertex of the polyhedron")]
    NotAVertex(String),

    #[error("face is not a face of the polyhedron")]
    NotAFace,

    #[error("fan overlap: cones #{first} and #{second} meet in {intersection}, which is not a common face")]
    FanOverlap {
        first: usize,
        second: usize,
        intersection: String,
    },

    #[error("ray {0} lies outside the support of the fan")]
    RayOutsideSupport(String),

    #[error("fan is not complete")]
    NotComplete,

    #[error("poset is not graded: {0}")]
    NotGraded(String),

    #[error("weight {0} is not in the dual of the tail cone")]
    NotInDualCone(String),

    #[error("the locus is affine; the degree polyhedron is only defined over the full curve")]
    AffineLocus,

    #[error("point {0:?} is not in the locus of the divisor")]
    PointExcluded(String),

    #[error("unknown point label {0:?}")]
    UnknownPoint(String),

    #[error("point label {0:?} appears twice")]
    DuplicatePoint(String),

    #[error("point {0:?} is excluded from the locus but carries a coefficient")]
    CoefficientAtExcludedPoint(String),

    #[error("coefficient at {point:?} has tail {found}, expected {expected}")]
    TailMismatch {
        point: String,
        expected: String,
        found: String,
    },

    #[error("invalid divisorial fan: {0}")]
    InvalidFan(String),

    #[error("cone {0} is not simplicial")]
    NonSimplicial(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::ZeroVector
            | Error::DimensionMismatch { .. }
            | Error::EmptyPointSet
            | Error::NotStronglyConvex
            | Error::NotAVertex(_)
            | Error::NotAFace
            | Error::UnknownPoint(_)
            | Error::DuplicatePoint(_)
            | Error::CoefficientAtExcludedPoint(_)
            | Error::TailMismatch { .. }
            | Error::NotInDualCone(_)
            | Error::PointExcluded(_)
            | Error::RayOutsideSupport(_) => ErrorCategory::Input,
            Error::FanOverlap { .. } | Error::InvalidFan(_) => ErrorCategory::Axiom,
            Error::NotComplete
            | Error::NotGraded(_)
            | Error::AffineLocus
            | Error::NonSimplicial(_)
            | Error::Precondition(_) => ErrorCategory::Precondition,
            Error::Invariant(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
