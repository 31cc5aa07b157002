use thiserror::Error;

/// Errors raised by interval construction, membership synthesis, the
/// interval Bayes computation, type reduction and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("interval endpoints must be finite, got [{lo}, {hi}]")]
    NonFinite { lo: f64, hi: f64 },

    #[error("inverted interval: lo {lo} > hi {hi}")]
    Inverted { lo: f64, hi: f64 },

    #[error("interval set is empty")]
    EmptySet,

    #[error("natural bounds are inverted: [{lower}, {upper}]")]
    InvalidBounds { lower: f64, upper: f64 },

    #[error("interval {index} [{lo}, {hi}] violates the natural bounds")]
    BoundViolation { index: usize, lo: f64, hi: f64 },

    #[error("interval operand has a negative endpoint: [{lo}, {hi}]")]
    NegativeOperand { lo: f64, hi: f64 },

    #[error("interval division requires a strictly positive denominator, got [{lo}, {hi}]")]
    DivisionDomain { lo: f64, hi: f64 },

    #[error("invalid weighted power mean input: {0}")]
    InvalidMeanInput(String),

    #[error("invalid exponent {0}")]
    InvalidExponent(f64),

    #[error("synthesize expects nonnegative intervals; interval {index} has lo {lo}")]
    NegativeInterval { index: usize, lo: f64 },

    #[error("minimum range [{min_lo}, {min_hi}] must lie left of maximum range [{max_lo}, {max_hi}]")]
    OverlappingSmeRanges { min_lo: f64, min_hi: f64, max_lo: f64, max_hi: f64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("membership function does not reach 1 (height {0})")]
    NonNormal(f64),

    #[error("alpha grids differ between operands")]
    GridMismatch,

    #[error("numerator and evidence cuts are both identically zero at alpha {alpha}")]
    DegenerateInputs { alpha: f64 },

    #[error("upper membership is identically zero")]
    ZeroUpperMembership,

    #[error("{message} at line {line}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input-shaped failures; everything else is a computation failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::Inverted { .. }
                | Error::EmptySet
                | Error::InvalidBounds { .. }
                | Error::BoundViolation { .. }
                | Error::NegativeInterval { .. }
                | Error::OverlappingSmeRanges { .. }
                | Error::InvalidArgument(_)
                | Error::InvalidExponent(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::Json(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        if self.is_validation() {
            "validation"
        } else {
            "computation"
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
