use thiserror::Error;

/// Broad failure classes. The CLI maps each one onto a process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad arguments or parameter values.
    Usage,
    /// Malformed or unreadable input files.
    InputFormat,
    /// Inputs were well formed but the computation cannot proceed.
    Computation,
    /// An invariant that the algorithms guarantee did not hold.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate extent: all {axis} coordinates are equal")]
    DegenerateExtent { axis: char },
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("non-finite coordinate at point {index}")]
    NonFinite { index: usize },
    #[error("points {first} and {second} coincide (distance < 1e-12)")]
    DuplicatePoint { first: usize, second: usize },
    #[error("invalid threshold {0}: must be non-negative")]
    InvalidThreshold(f64),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid n = {0}: need n >= 2")]
    InvalidN(usize),
    #[error("point count {count} is not a perfect square; pass n explicitly")]
    NotSquareCount { count: usize },
    #[error("cloud has {count} points, oracle accepts at most {max}")]
    TooLarge { count: usize, max: usize },
    #[error("{count} unpaired 1-cycle(s) at threshold {threshold} >= enclosing radius")]
    UnpairedCycle { count: usize, threshold: f64 },
    #[error("out of bounds: {0}")]
    Bounds(String),
    #[error("no seed produced a usable region")]
    EmptyResult,
    #[error("unit mismatch: {0} vs {1}")]
    UnitMismatch(String, String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            InvalidSpec(_) | InvalidParameter(_) | InvalidThreshold(_) | InvalidN(_)
            | NotSquareCount { .. } | TooLarge { .. } => ErrorKind::Usage,
            Parse { .. } | Format(_) | Io(_) | Json(_) | NonFinite { .. } | EmptyCloud => {
                ErrorKind::InputFormat
            }
            DegenerateExtent { .. } | DuplicatePoint { .. } | InsufficientData(_) | Bounds(_)
            | EmptyResult | UnitMismatch(..) => ErrorKind::Computation,
            UnpairedCycle { .. } => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
