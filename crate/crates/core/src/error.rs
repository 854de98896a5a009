use thiserror::Error;

/// Errors raised by evaluators and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator factor vanished at the evaluation point.
    #[error("pole: {0}")]
    Pole(String),
    /// More than one denominator factor vanished at a residue locus.
    #[error("non-simple pole: {0}")]
    NonSimplePole(String),
    /// Every sampled point hit a pole.
    #[error("resampling exhausted after {attempts} attempts: {last}")]
    ResampleExhausted { attempts: usize, last: String },
    /// The run configuration is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Whether a fresh random point may avoid this error.
    pub fn is_degeneracy(&self) -> bool {
        matches!(self, Error::Pole(_) | Error::NonSimplePole(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
