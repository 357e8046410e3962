use thiserror::Error;

/// Errors raised by the germ invariant machinery.
///
/// `Internal` and `TheoremViolation` indicate bugs in this crate, never bad
/// user input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("operands live over different coefficient fields")]
    MixedTowers,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is a unit at the origin")]
    Unit,
    #[error("{0} is not supported in characteristic 0")]
    CharacteristicZero(&'static str),
    #[error("cannot extend by a polynomial of degree {0}; degree must be at least 2")]
    DegreeTooSmall(usize),
    #[error("extension polynomial is reducible")]
    Reducible,
    #[error("weights ({0}, {1}) are not positive and coprime")]
    BadWeights(u32, u32),
    #[error("polynomial is not quasihomogeneous for weights ({0}, {1})")]
    NotQuasihomogeneous(u32, u32),
    #[error("Newton diagram is not convenient")]
    NotConvenient,
    #[error("face is not an inner face")]
    NotInnerFace,
    #[error("Newton diagram has no vertex on the {0} axis")]
    NoAxisVertex(&'static str),
    #[error("germ is not reduced")]
    NotReduced,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("theorem violation for {poly}: {ids:?}")]
    TheoremViolation { poly: String, ids: Vec<String> },
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
