use thiserror::Error;

/// Errors raised by the engines.
///
/// The CLI maps [`Error::is_format`] variants to exit code 3 and all others
/// to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unstable cell (g, n) = ({g}, {n}): need 2g - 2 + n > 0")]
    Unstable { g: u32, n: usize },

    #[error("negative exponent {0} in correlator")]
    NegativeExponent(i64),

    #[error("correlators need at least one insertion")]
    EmptyCorrelator,

    #[error("double factorial undefined for {0}")]
    DoubleFactorialDomain(i64),

    #[error("missing lower cell ({g}, {n})")]
    MissingCell { g: u32, n: usize },

    #[error("exponent {0} is not of the form a - 1/2 with a >= 0")]
    HalfExponent(i32),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid rational {0:?}")]
    ParseRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for I/O and file-format problems, as opposed to domain errors.
    pub fn is_format(&self) -> bool {
        matches!(self, Error::CacheFormat(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
