use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the verification layers above it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("unknown family {0:?} (expected one of: {1})")]
    UnknownFamily(String, String),

    #[error("unknown suite {0:?} (expected one of: {1})")]
    UnknownSuite(String, String),

    #[error("root intervals could not be separated after {rounds} refinement rounds (possible shared root)")]
    Indistinguishable { rounds: usize },

    #[error("pole: {0}")]
    Pole(String),

    #[error("point {re}{im:+}i lies on the cut (-inf, 1]")]
    OnCut { re: f64, im: f64 },

    #[error("argument {0} outside the supported domain: {1}")]
    OutOfDomain(f64, String),

    #[error("expected {expected} real roots counted with multiplicity, found {found}")]
    NotHyperbolic { expected: usize, found: usize },

    #[error("root set carries no source polynomial, refinement impossible")]
    MissingSource,
}

pub type Result<T> = std::result::Result<T, Error>;
