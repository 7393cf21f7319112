use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("coefficient `{0}` is not an integer")]
    NonInteger(String),
    #[error("malformed token `{0}`")]
    Malformed(String),
}

/// Structured rejection from Salem verification; each variant names the first
/// check that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SalemError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("minimal polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is odd or smaller than 4")]
    OddOrSmallDegree(usize),
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("coefficients are not palindromic")]
    NotReciprocal,
    #[error("root pattern mismatch: {0}")]
    RootPatternMismatch(String),
}

impl SalemError {
    /// Short machine-readable reason name.
    pub fn reason(&self) -> &'static str {
        match self {
            SalemError::ZeroPolynomial => "ZeroPolynomial",
            SalemError::NotMonic => "NotMonic",
            SalemError::OddOrSmallDegree(_) => "OddOrSmallDegree",
            SalemError::Reducible => "Reducible",
            SalemError::NotReciprocal => "NotReciprocal",
            SalemError::RootPatternMismatch(_) => "RootPatternMismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("polynomial must be nonconstant after dropping its constant term")]
    Constant,
    #[error("value {y} lies outside the branch range [{alpha}, {beta}]")]
    OutOfRange { y: f64, alpha: f64, beta: f64 },
    #[error("abscissa {0} lies outside [0, 1]")]
    Domain(f64),
    #[error("abscissa {x} is within the asymptote tolerance of v = {v}")]
    AtAsymptote { x: f64, v: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("required precision {needed} bits exceeds the cap of {cap} bits")]
    PrecisionCap { needed: u64, cap: u64 },
    #[error("analytic model needs a degree-4 Salem number, got degree {0}")]
    DegreeMismatch(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
