use thiserror::Error;

/// Errors raised by operator construction, identity evaluation and the runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angle {phi} lies within {margin} rad of a pole")]
    NearPole { phi: f64, margin: f64 },

    #[error("only {accepted} of {requested} sample points survived pole rejection")]
    DegenerateSampling { accepted: usize, requested: usize },

    #[error("{requested} samples cannot certify a trig polynomial of degree {degree} (need at least {required})")]
    InsufficientSamples {
        requested: usize,
        degree: usize,
        required: usize,
    },

    #[error("k = {0} is even; this construction is only defined for odd k")]
    OddKRequired(u32),

    #[error("k = {0} is odd; the negative control needs an even k")]
    EvenKRequired(u32),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("operator has a non-finite entry")]
    NonFinite,

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
