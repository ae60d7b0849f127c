use thiserror::Error;

pub type Result<T, E = FrechetError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrechetError {
    #[error("point sequence is empty")]
    EmptySequence,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points must have at least one coordinate")]
    ZeroDimension,

    #[error("non-finite coordinate at point {index}")]
    NonFinite { index: usize },

    #[error("metric returned an invalid value {value} (must be finite and non-negative)")]
    InvalidMetricValue { value: f64 },

    #[error("cyclic shift {shift} out of range 0..={len}")]
    ShiftOutOfRange { shift: usize, len: usize },

    #[error("cell ({i}, {j}) outside the {rows}x{cols} diagram")]
    CellOutOfBounds {
        i: usize,
        j: usize,
        rows: usize,
        cols: usize,
    },

    #[error("diagram dimensions must be positive")]
    EmptyDiagram,

    #[error("selection position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("delta {delta} is below the closed distance: no allowed cells remain")]
    DeltaBelowDistance { delta: f64 },

    #[error("no allowed cells in the diagram")]
    NoAllowedCells,

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl FrechetError {
    /// True for bookkeeping failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, FrechetError::Internal(_))
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        FrechetError::Internal(msg.into())
    }
}
