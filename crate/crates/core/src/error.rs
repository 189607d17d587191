use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivisor,

    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("precision underflow: {0}")]
    PrecisionUnderflow(String),

    #[error("seed {0} is not a simple root of the reduced equation")]
    NotASimpleRoot(String),

    #[error("invalid truncation order {0}: must be at least 1")]
    InvalidOrder(i64),

    #[error("linear system is singular")]
    SingularSystem,

    #[error("valuation of the zero element is undefined")]
    ZeroElement,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("invalid degree {0}: must be at least 1")]
    InvalidDegree(i64),

    #[error("ramification profile is inconsistent: genus would be {0}")]
    InconsistentRamification(String),

    #[error("norm has non-zero alpha coefficients")]
    NormNotInBaseField,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("reproduction failure in `{check}` ({lemma})")]
    ReproductionFailure { check: String, lemma: String },
}
