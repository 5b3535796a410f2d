use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("total dimension {total} exceeds the maximum of {max}")]
    DimensionOverflow { total: usize, max: usize },

    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("operator is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("invalid projective measurement: {0}")]
    InvalidMeasurement(String),

    #[error("unknown outcome label {label} for party {party}")]
    UnknownLabel { party: usize, label: i32 },

    #[error("direction ({0}, {1}, {2}) is not a unit vector")]
    NonUnitDirection(f64, f64, f64),

    #[error("enumeration of {count} strategies exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },

    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),

    #[error("operation requires two outcomes per setting on each side")]
    NotBinary,

    #[error("invalid behavior at setting pair (x={x}, y={y}): {reason}")]
    InvalidBehavior { x: usize, y: usize, reason: String },

    #[error("setting pair (x={x}, y={y}) has no possible outcome at eps_support={eps}")]
    EmptySupport { x: usize, y: usize, eps: f64 },

    #[error("linear program too large: {rows} rows x {cols} columns")]
    ProblemTooLarge { rows: usize, cols: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
