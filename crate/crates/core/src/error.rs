use thiserror::Error;

use crate::simplex::Simplex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed simplex {0:?}: vertices must be nonempty and distinct")]
    MalformedSimplex(Vec<u32>),

    #[error("simplex {0} is not face-closed in the input: facet {1} is missing")]
    NotFaceClosed(Simplex, Simplex),

    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("{0} is not a prime characteristic (use 0 for the integers)")]
    NotPrime(u32),

    #[error("non-monotone filtration: {face} born at {face_birth} after its coface {simplex} born at {birth}")]
    NonMonotone {
        face: Simplex,
        face_birth: String,
        simplex: Simplex,
        birth: String,
    },

    #[error("birth level {0} of {1} is not among the declared levels")]
    UnknownLevel(u32, Simplex),

    #[error("simplex {0} is not in the ambient complex")]
    NotInComplex(Simplex),

    #[error("chain is not a cycle: boundary has {0} nonzero terms")]
    NotACycle(usize),

    #[error("chains are not compatible: {0}")]
    Incompatible(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("witness over the rationals does not clear denominators")]
    NonIntegralWitness,

    #[error("invalid generator parameters: {0}")]
    GeneratorParams(String),

    #[error("invalid point cloud: {0}")]
    PointCloud(String),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
