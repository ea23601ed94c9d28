use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(u32, u32),

    #[error("value is not a Laurent polynomial: {0}")]
    NotPolynomial(String),

    #[error("polynomial is not invariant under t -> 1/t: {0}")]
    NotPalindromic(String),

    #[error("polynomial has non-integral powers of t: {0}")]
    HalfIntegralTPower(String),

    #[error("denominator vanishes at the evaluation point")]
    DenominatorZero,

    #[error("exponent {0} is not a half-integer; cannot evaluate at a rational point")]
    NonHalfIntegralExponent(String),

    #[error("invalid colors: {0}")]
    InvalidColors(String),

    #[error("invalid link parameters: {0}")]
    InvalidLink(String),

    #[error("r = {r} and k = {k} are not coprime")]
    NotCoprime { r: u32, k: i64 },

    #[error("homfly specialization needs every color to be (1), got {0}")]
    WrongColors(String),

    #[error("linear system is singular")]
    SingularSystem,

    #[error("solved coefficient is not a Laurent polynomial in u: {0}")]
    NonLaurent(String),

    #[error("interpolation nodes coincide: {0}")]
    SpectralCollision(String),

    #[error("denominator is not a product of brackets: {0}")]
    NotBracketClosed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}
