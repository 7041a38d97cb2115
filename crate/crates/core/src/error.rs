use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Parse and configuration problems are kept apart from domain errors so the
/// command-line front end can map them onto distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("division by zero at byte {offset}")]
    DivisionByZero { offset: usize },

    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(String),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("argument must be positive: {0}")]
    NonPositiveArgument(String),

    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: i64, k: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("n = {n} must exceed alpha/24 = {bound}")]
    NTooSmall { n: u64, bound: String },

    #[error("delta = {delta} outside (0, {upper})")]
    DeltaOutOfRange { delta: String, upper: String },

    #[error("alpha = {0} must be below 24 for this operation")]
    AlphaTooLarge(String),

    #[error("|x| = {0} is too close to the unit circle")]
    OutsideDisk(String),

    #[error("imaginary residue {imag} too large relative to real part {real}")]
    ImaginaryResidue { real: String, imag: String },

    #[error("rounding ambiguity: distance to nearest integer is {0}")]
    RoundingAmbiguity(String),

    #[error("precision escalation exceeded {0} digits")]
    PrecisionExhausted(u32),

    #[error("empirical scan passed the guaranteed term count {0}")]
    ScanExceeded(u64),

    #[error("certified evaluation needs more than {0} series terms")]
    WorkLimit(u64),

    #[error("operation requires a rational alpha, got {0}")]
    IrrationalAlpha(String),

    #[error("need coefficients up to index {needed}, have {available}")]
    InsufficientValues { needed: usize, available: usize },

    #[error("radicand of delta(n) is not positive at n = {0}")]
    RadicandNonPositive(u64),

    #[error("hyperbolicity verdict is indeterminate within tolerance")]
    Indeterminate,

    #[error("zero polynomial has no hyperbolicity verdict")]
    ZeroPolynomial,

    #[error("golden table error: {0}")]
    Golden(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for parse and configuration errors (as opposed to mathematical
    /// domain errors).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DivisionByZero { .. }
                | Error::NonPositiveAlpha(_)
                | Error::InvalidPrecision(_)
                | Error::IrrationalAlpha(_)
                | Error::InvalidArgument(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
