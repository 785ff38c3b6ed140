use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the function (e.g. Γ at a
    /// nonpositive point).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("factor #{index} with base {base:?} cannot be normalized to a power series")]
    NonNormalizableFactor { index: usize, base: Vec<i64> },

    /// The constant-term enumeration visited more nodes than allowed.
    #[error("resource cap exceeded: more than {cap} search nodes")]
    ResourceExhausted { cap: u64 },

    #[error("structural error: {0}")]
    Structural(String),

    /// The leading recursion coefficient vanished where a value was required.
    #[error("recursion divisor c_0 vanishes at t = {t}")]
    ZeroDivisor { t: i64 },

    #[error("consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}
