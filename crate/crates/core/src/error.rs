use thiserror::Error;

/// Errors raised by the library. Invariant breaches inside the engine
/// (which would indicate a bug rather than bad input) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected an odd argument, got {0}")]
    EvenArgument(i64),
    #[error("modulus exponent {0} is outside the supported range 3..=24")]
    UnsupportedExponent(u32),
    #[error("{0} is not a negative squarefree integer")]
    BadDiscriminant(i64),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("denominator {t} shares a factor with the level {level}")]
    DenominatorNotCoprime { t: i64, level: u64 },
    #[error("Hecke-cut eigenspace has dimension {dim} (cutting primes {primes:?})")]
    EigenspaceDimension { dim: usize, primes: Vec<u64> },
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("operation needs level >= {min}, got {got}")]
    LevelTooSmall { min: u32, got: u32 },
    #[error("character of order 2^{order} cannot be applied at level {level}")]
    CharacterOrder { order: u32, level: u32 },
    #[error("the zero element has no mu/lambda invariant")]
    ZeroElement,
    #[error("element has non-integral coefficients")]
    NonIntegral,
    #[error("{0} is not a valid twist modulus")]
    InvalidTwist(i64),
    #[error("modulus {modulus} is not compatible with character modulus {character}")]
    IncompatibleModulus { modulus: i64, character: i64 },
    #[error("cache file line {line}: {msg}")]
    CacheFormat { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
