use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bipartite factors must both be at least 2, got {m}x{n}")]
    DegenerateDim { m: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("operator is not positive semidefinite (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace must be 1, got {trace}")]
    NotUnitTrace { trace: f64 },

    #[error("vector must have unit norm, got {norm}")]
    NotUnitVector { norm: f64 },

    #[error("vector is zero")]
    ZeroVector,

    #[error("Schmidt level k = {k} outside 1..={max}")]
    LevelOutOfRange { k: usize, max: usize },

    #[error("basis columns are not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("subspace must be proper and nonzero, got dimension {dim} in {total}")]
    TrivialSubspace { dim: usize, total: usize },

    #[error("state coincides with the maximally mixed state; thresholds are undefined")]
    DegenerateFamily,

    #[error("operator is positive semidefinite; it lies inside the state space")]
    InsideStateSpace,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
