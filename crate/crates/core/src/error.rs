use thiserror::Error;

/// Errors raised by tree construction, geometry and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {dims} dimensions at precision {precision} exceeds {max} tree levels")]
    InvalidDepth { dims: u32, precision: u32, max: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {value} on axis {axis} outside [0, {limit})")]
    CoordinateOutOfRange { axis: usize, value: u64, limit: u64 },

    #[error("real coordinate {value} on axis {axis} outside [0, 1)")]
    RealOutOfRange { axis: usize, value: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("fission requires a terminal node")]
    NotTerminal,

    #[error("bounds did not converge after {0} doublings")]
    BoundsDiverged(u32),

    #[error("reference boxes are not nested on a power-of-two grid: {0}")]
    BoxesNotNested(String),

    #[error("axis {axis} out of range for {dims} dimensions")]
    AxisOutOfRange { axis: usize, dims: usize },

    #[error("homogeneous matrix is singular")]
    SingularMatrix,

    #[error("transformed vertex {0} lies at infinity")]
    VertexAtInfinity(usize),

    #[error("tree has zero mass")]
    ZeroMass,

    #[error("degenerate eigen frame: principal eigenvalue is {0}")]
    DegenerateFrame(f64),

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("{0} is not supported")]
    Unsupported(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
