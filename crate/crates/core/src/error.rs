use thiserror::Error;

/// Errors raised by the library. Each variant names the caller-side condition
/// that triggered it; none of them indicate a numeric failure except
/// [`Error::InternalInconsistency`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {rank} is outside the valid window for family {family} ({window})")]
    InvalidRank {
        family: String,
        rank: usize,
        window: &'static str,
    },

    #[error("unsupported family {0}: no spectral data is available for it")]
    UnsupportedFamily(String),

    #[error("unknown family label {0:?}")]
    UnknownFamily(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unsupported number of squares s = {0} (closed forms exist for s = 2 and s = 4 only)")]
    UnsupportedS(usize),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("unsupported rank {0}: exponent profiles require rank >= 2 (rank 1 is Spin(3) = SU(2), the 3-sphere)")]
    UnsupportedRank(usize),

    #[error("sampling violates the Nyquist margin: {samples} samples for maximum frequency {max_frequency} (need >= {required})")]
    NyquistViolation {
        samples: usize,
        max_frequency: u64,
        required: usize,
    },

    #[error("denominator vanishes: all coefficients are zero")]
    ZeroDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
