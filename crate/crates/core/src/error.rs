use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),

    #[error("rows and columns must be nonincreasing (row {row}, column {col})")]
    NotAPlanePartition { row: usize, col: usize },

    #[error("slice sequence does not interlace between times {time} and {}", .time + 1)]
    NotInterlacing { time: i64 },

    #[error("half-integer expected, got doubled value {0}")]
    NotHalfOdd(i64),

    #[error("tile point ({t}, {h2}/2) violates the parity constraint h + (t+1)/2 in Z")]
    TileParity { t: i64, h2: i64 },

    #[error("series tail bound {bound:e} exceeds {limit:e} at truncation order {order}")]
    TailBound { bound: f64, limit: f64, order: usize },

    #[error("times must be strictly increasing: {0:?}")]
    NonMonotoneTimes(Vec<i64>),

    #[error("enumeration exceeded {limit} configurations")]
    CountOverflow { limit: usize },

    #[error("point {0} is within {1:e} of a zero or pole")]
    NearSingularity(String, f64),

    #[error("the unit circle does not lie in the annulus of analyticity ({inner}, {outer})")]
    NoAnnulus { inner: f64, outer: f64 },

    #[error("quadrature did not reach tolerance {tol:e} after {nodes} nodes (last change {change:e})")]
    NoConvergence { tol: f64, nodes: usize, change: f64 },

    #[error("kernel value has imaginary part {0:e} above tolerance")]
    NonReal(f64),

    #[error("argument {0} lies on a branch cut")]
    OnBranchCut(String),

    #[error("integration path passes through the singular point w = 1")]
    SingularEndpoint,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
