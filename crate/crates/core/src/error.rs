use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Which admissibility condition on the `(a, b)` amplitudes failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamViolation {
    /// `3|a|^2 + |b|^2` differs from 1; carries the computed value.
    Normalization(f64),
    /// `a` or `b` has vanishing modulus.
    ZeroAmplitude,
}

impl core::fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParamViolation::Normalization(v) => {
                write!(f, "3|a|^2+|b|^2 must equal 1 (got {v})")
            }
            ParamViolation::ZeroAmplitude => f.write_str("a*b must be nonzero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension {0} is not a power of two")]
    BadDimension(usize),
    #[error("dimension {0} exceeds the supported maximum of 16")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("vector has zero norm")]
    ZeroVector,
    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("particle {particle} out of range for {count} particles")]
    ParticleOutOfRange { particle: usize, count: usize },
    #[error("index {0} out of range 1..=3")]
    IndexOutOfRange(usize),
    #[error("observable set is empty")]
    EmptyObservableSet,
    #[error("observables {left} and {right} do not commute")]
    NonCommuting { left: String, right: String },
    #[error("value {value} is not in the spectrum of {label}")]
    ValueNotInSpectrum { label: String, value: f64 },
    #[error("conditional probability undefined: condition has probability {0:e}")]
    UndefinedConditional(f64),
    #[error("cannot collapse onto outcome of probability {0:e}")]
    CollapseOnNull(f64),
    #[error("ket label may only contain '+' and '-', found {0:?}")]
    InvalidKet(char),
    #[error("claim index {index} out of range: scenario emits {count} claims")]
    NoSuchClaim { index: usize, count: usize },
    #[error("invalid state parameters: {0}")]
    InvalidParams(ParamViolation),
}
