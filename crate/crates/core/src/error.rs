use thiserror::Error;

/// Errors raised by the exact and numerical engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponential requires a series without constant term")]
    ConstantTerm,

    #[error("exponential does not terminate inside the truncation window")]
    NonTerminating,

    #[error("a zero slope cannot be expanded in inverse powers of z")]
    ZeroSlope,

    #[error("fixed-point weight must be nonzero")]
    ZeroWeight,

    #[error("winding number must be nonzero")]
    ZeroWinding,

    #[error("disk class has d- = d+ = {0}; no disk invariant is defined")]
    EqualDiskDegrees(u32),

    #[error("J-function component index must be 1 or 2, got {0}")]
    InvalidComponent(u8),

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("identically zero factor in a denominator")]
    ZeroDenominator,

    #[error("specialization u2 = -u1 = v hits a pole")]
    SpecializationPole,

    #[error("product of linear factors does not reduce to a single v/(v - c z) factor")]
    NotSingleFactor,

    #[error("pole: {0}")]
    Pole(String),

    #[error("{0}")]
    Degenerate(String),

    #[error("series did not converge within {0} terms")]
    TermLimit(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
