//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by chain construction, diagonalization, spectral analysis,
/// and the genetic search.
#[derive(Debug, Error)]
pub enum Error {
    /// A `ChainSpec` violates its structural invariants.
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),

    /// Chain length below the two-site minimum.
    #[error("invalid chain size {0}: need at least 2 sites")]
    InvalidSize(usize),

    /// A p-factor must be an odd integer >= 1.
    #[error("invalid p-factor {0}: must be an odd integer >= 1")]
    InvalidP(i64),

    /// Eigensolver failed to converge (or another numerical breakdown).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Two adjacent eigenvalues in the spectrum body coincide, so the
    /// Q-factor is undefined.
    #[error("degenerate spectrum: a body eigenvalue spacing is zero")]
    DegenerateSpectrum,

    /// An eigenvector has negligible weight on both end sites, so its
    /// mirror parity cannot be read off.
    #[error("mirror parity undetermined for eigenvector {0}")]
    ParityUndetermined(usize),

    /// Generation index outside [0, G] for the mutation schedule.
    #[error("generation {g} outside schedule range [0, {max}]")]
    GenerationOutOfRange { g: u32, max: u32 },

    /// Crossover parents carry different gene counts.
    #[error("gene count mismatch: {left} vs {right}")]
    GeneCountMismatch { left: usize, right: usize },

    /// A GA configuration field violates its constraints.
    #[error("invalid GA config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
