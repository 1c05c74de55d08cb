use alloc::string::String;

/// Errors raised by ring constructors and the commutator constructions.
///
/// Values are rendered to text eagerly so the error does not need to carry
/// the ring it came from.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },
    #[error("value is not a canonical element of {0}")]
    NotInRing(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("nonzero trace: {0}")]
    NonzeroTrace(String),
    #[error("trace mismatch: matrix trace is {expected}, sum evaluates to {found}")]
    TraceMismatch { expected: String, found: String },
    #[error("term {index}: {element} does not commute with left entry {left}")]
    NotCentralizing {
        index: usize,
        element: String,
        left: String,
    },
    #[error("idempotent split rejected: {0}")]
    Idempotent(String),
    #[error("corner {corner}: {reason}")]
    Corner { corner: usize, reason: String },
    #[error("sum of {len} terms does not fit in {max} matrix positions")]
    SumTooLong { len: usize, max: usize },
    #[error("exact division by {0} unavailable in base ring")]
    DivisionUnavailable(String),
    #[error("characteristic mismatch: {0}")]
    Characteristic(String),
    #[error("no obstruction: r is zero")]
    ZeroObstruction,
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("images in I/I^2 are dependent: {0}")]
    DependentImages(String),
    #[error("no fresh index below bound {0}")]
    NoFreshIndex(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
