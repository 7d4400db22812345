use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The amplitudes cancel (or were all pruned) and the state cannot be normalized.
    #[error("zero norm: the state amplitudes cancel")]
    ZeroNorm,

    /// Every superposition coefficient is zero.
    #[error("zero state: all superposition coefficients vanish")]
    ZeroState,

    #[error("state is not normalized (norm squared {0:.3e})")]
    NotNormalized(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("non-finite amplitude at |{0},{1}>")]
    NonFinite(u32, u32),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A closed form disagreed with its operator cross-check.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
