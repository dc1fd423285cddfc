//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("denominator constant term must be the ring unit 1")]
    NonInvertibleDenominator,
    #[error("uncovered generators: {0}")]
    UncoveredGenerators(String),
    #[error("enumeration bound exceeded: {0}")]
    TooLarge(String),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("singular curve: discriminant vanishes mod p")]
    SingularCurve,
    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),
    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
