use thiserror::Error;

/// Errors produced by the geometric kernel.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("point of dimension {got} outside domain of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {point:?} violates domain bounds on axis {axis}")]
    DomainViolation { point: Vec<f64>, axis: usize },

    #[error("map '{map}' produced a non-finite value at {point:?}")]
    NonFinite { map: String, point: Vec<f64> },

    #[error("frame is rank deficient (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("corank {corank} at singular point exceeds 1; no limiting plane")]
    CorankTooHigh { corank: usize },

    #[error("limiting plane did not stabilize: step-halving disagreement {disagreement:.3e} > {tol:.3e}")]
    LimitPlaneUnstable { disagreement: f64, tol: f64 },

    #[error("target space mismatch: expected {expected}, got {got}")]
    TargetMismatch { expected: String, got: String },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),
}
