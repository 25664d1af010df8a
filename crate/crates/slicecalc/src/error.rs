//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("incompatible algebras: Cl_{left} vs Cl_{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported algebra dimension m = {0} (supported: 1..=6)")]
    UnsupportedDimension(usize),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("kernel singularity: q lies on the sphere [x] (center {center}, radius {radius})")]
    KernelSingularity { center: f64, radius: f64 },

    #[error("point on the real axis: {0} (operator restricted to R^{{m+1}} minus R)")]
    RealAxis(String),

    #[error("point (u, v) = ({u}, {v}) outside the stem support")]
    OutsideSupport { u: f64, v: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported derivative order |l| = {0} (only |l| <= 2)")]
    UnsupportedOrder(usize),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("basis degenerate: real Gram condition estimate {cond:.3e} exceeds {limit:.1e}; reduce the degree")]
    DegenerateBasis { cond: f64, limit: f64 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
