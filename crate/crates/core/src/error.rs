use thiserror::Error;

/// Failure classes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Ω is within the resonance guard of the trap frequency ω0.
    #[error("resonance singularity: |omega0^2 - Omega^2| = {gap:e} below guard {guard:e}")]
    ResonanceSingularity { gap: f64, guard: f64 },

    #[error("dipole selection rule violated: l = {l}, l' = {l_prime}")]
    SelectionRule { l: u32, l_prime: u32 },

    #[error("level not found: {0}")]
    NotFound(String),

    #[error("unphysical transition: emitted frequency {0:e} rad/s is not positive")]
    UnphysicalTransition(f64),

    /// Parameters are outside the regime where an approximation holds.
    #[error("out of regime: {0}")]
    OutOfRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
