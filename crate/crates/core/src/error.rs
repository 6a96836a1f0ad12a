use thiserror::Error;

/// Domain errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not dyadic")]
    NotDyadic,
    #[error("not a projective point")]
    NotProjectivePoint,
    #[error("rational input")]
    RationalInput,
    #[error("not unimodular")]
    NotUnimodular,
    #[error("pole")]
    Pole,
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("incompatible fields")]
    IncompatibleFields,
    #[error("reducible polynomial")]
    Reducible,
    #[error("invalid isolating interval: {0}")]
    InvalidInterval(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("height undefined at finite depth")]
    HeightUndefined,
    #[error("over guard: {0}")]
    OverGuard(String),
    #[error("too few samples: need at least 4, got {0}")]
    TooFewSamples(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable snake-case identifier, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "zero_denominator",
            Error::NotDyadic => "not_dyadic",
            Error::NotProjectivePoint => "not_a_projective_point",
            Error::RationalInput => "rational_input",
            Error::NotUnimodular => "not_unimodular",
            Error::Pole => "pole",
            Error::PrecisionExhausted => "precision_exhausted",
            Error::IncompatibleFields => "incompatible_fields",
            Error::Reducible => "reducible_polynomial",
            Error::InvalidInterval(_) => "invalid_interval",
            Error::OutOfRange(_) => "out_of_range",
            Error::HeightUndefined => "height_undefined",
            Error::OverGuard(_) => "over_guard",
            Error::TooFewSamples(_) => "too_few_samples",
            Error::Invalid(_) => "invalid_input",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
