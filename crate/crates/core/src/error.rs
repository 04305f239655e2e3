use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid size must be even ≥ 8 (got {0})")]
    GridSize(usize),

    #[error("non-quantized flux: {value} is {deviation:e} away from an integer")]
    NonQuantizedFlux { value: f64, deviation: f64 },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("grid mismatch: expected n = {expected}, found {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("zeros too close: {0}")]
    ZerosTooClose(String),

    #[error("zero on mask boundary: {0}")]
    ZeroOnMaskBoundary(String),

    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    #[error("pairing degenerate: |<tau v, w>| below {threshold:e} for every basis element")]
    PairingDegenerate { threshold: f64 },

    #[error("unreliable rank: gap ratio {gap_ratio:e} below 1e3")]
    UnreliableRank { gap_ratio: f64 },

    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),

    #[error("mean discrepancy: integral of w is {0:e}, expected 0")]
    MeanDiscrepancy(f64),

    #[error("stalled after {iterations} Newton steps (best sup residual {best_residual:e})")]
    Stalled { iterations: usize, best_residual: f64 },

    #[error("case mismatch: {0}")]
    CaseMismatch(String),

    #[error("unsupported genus {0}")]
    UnsupportedGenus(u32),

    #[error("unclassified: {0}")]
    Unclassified(String),

    #[error("not defined: {0}")]
    NotDefined(String),

    #[error("theta summary is a d=0 construction")]
    ThetaSummaryDegree,

    #[error("derived classification disagrees with the reference table: {0}")]
    TableMismatch(String),

    #[error("malformed blob: {0}")]
    Blob(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
