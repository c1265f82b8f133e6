use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported weight {weight}; supported weights are {supported:?}")]
    UnsupportedWeight { weight: u32, supported: &'static [u32] },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("rational reconstruction failed for weight {weight}, s = {s}: {reason}")]
    ReconstructionFailed { weight: u32, s: u32, reason: String },

    #[error("cannot evaluate double zeta symbol D{{{r},{s}}} of odd weight")]
    OddWeightSymbol { r: u32, s: u32 },

    #[error("Hecke operator requires a cuspidal series (zero constant term)")]
    NonCuspidal,

    #[error("precision too low: {0}")]
    PrecisionTooLow(String),

    #[error("no prime p > {weight} divides the numerator of B_{weight}")]
    NoQualifyingPrime { weight: u32 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("cache I/O error: {0}")]
    CacheIo(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
