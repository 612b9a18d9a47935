//! Error type shared by all modules.

use crate::hilbert::PhasePoint;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("odd dimension required, got {0}")]
    OddDimensionRequired(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance")]
    NotHermitian { asymmetry: f64 },

    #[error("operator is not positive semidefinite: most negative eigenvalue {eigenvalue:.6e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("fiducial vector is not normalized: |norm - 1| = {deviation:.3e}")]
    FiducialNotNormalized { deviation: f64 },

    #[error("no built-in fiducial vector for dimension {0}; supply one explicitly")]
    NoDefaultFiducial(usize),

    #[error("operator has zero trace")]
    ZeroTrace,

    #[error("coherent family is not generic (witness subset {witness:?}); use the unchecked variant to override")]
    NonGenericFamily { witness: Option<Vec<PhasePoint>> },

    #[error("projector chain rank anomaly at step {step}: {detail}")]
    ChainRankAnomaly { step: usize, detail: String },

    #[error("ranking is not a permutation of 0..{expected}")]
    InvalidRanking { expected: usize },

    #[error("P-function kernel is ill-conditioned: cond = {cond:.3e}")]
    IllConditionedKernel { cond: f64 },

    #[error("ground set too large: {0} elements (limit 20)")]
    GroundSetTooLarge(usize),

    #[error("invalid capacity: {0}")]
    InvalidCapacity(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("inverse temperature must be nonnegative, got {0}")]
    NegativeInverseTemperature(f64),

    #[error("operator along path is not positive semidefinite at lambda = {lambda}: most negative eigenvalue {eigenvalue:.3e}")]
    PathNotPsd { lambda: f64, eigenvalue: f64 },

    #[error("interval endpoints are not comonotonic; bound does not apply")]
    EndpointsNotComonotonic,

    #[error("grid must contain at least two points")]
    GridTooSmall,

    #[error("{what} is unsupported for dimension {d}")]
    UnsupportedDimension { d: usize, what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
