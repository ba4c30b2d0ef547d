use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} is not defined for the shapes {args}")]
    UnsupportedShape { op: &'static str, args: String },

    #[error("dimension mismatch: {left} factors against {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("undefined endpoint arithmetic: inf + -inf")]
    IndeterminateSum,

    #[error("empty interval {0}")]
    EmptyInterval(String),

    #[error("infinite endpoint cannot be closed: {0}")]
    ClosedInfinity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("window [{lo}, {hi}] too small for endpoint {endpoint}")]
    WindowTooSmall { lo: i64, hi: i64, endpoint: String },

    #[error("invalid grid module: {0}")]
    InvalidModule(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("non-monotone filtration: face {face} has value {face_value} above {cell} at {cell_value}")]
    NonMonotone {
        cell: String,
        cell_value: String,
        face: String,
        face_value: String,
    },

    #[error("invalid prime {0}")]
    InvalidPrime(u32),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedShape { .. } => "unsupported_shape",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::IndeterminateSum => "indeterminate_sum",
            Error::EmptyInterval(_) => "empty_interval",
            Error::ClosedInfinity(_) => "closed_infinity",
            Error::Parse(_) => "parse",
            Error::WindowTooSmall { .. } => "window_too_small",
            Error::InvalidModule(_) => "invalid_module",
            Error::InvalidComplex(_) => "invalid_complex",
            Error::NonMonotone { .. } => "non_monotone",
            Error::InvalidPrime(_) => "invalid_prime",
        }
    }

    pub(crate) fn unsupported(op: &'static str, args: impl Into<String>) -> Self {
        Error::UnsupportedShape {
            op,
            args: args.into(),
        }
    }
}
