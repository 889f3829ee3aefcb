//! Quasi-perfect state transfer in uniformly coupled XY spin chains.
//!
//! This crate designs, simulates, and stress-tests on-site-energy profiles
//! for excitation transfer across N-site chains in the single-excitation
//! subspace:
//!
//! - [`hamiltonian`]: chain specs, reference coupling/on-site protocols,
//!   mirror-symmetry checks.
//! - [`dynamics`]: spectral time evolution, fidelity traces, peak finding.
//! - [`spectrum`]: pinch spectra, spectral penalties, the N=3 closed-form
//!   solution, and the phase-alignment transfer verifier.
//! - [`genetic`]: a mirror-symmetric genetic algorithm over on-site
//!   profiles.
//! - [`robustness`]: significant-figure rounding and Monte Carlo
//!   perturbation analysis.
//!
//! All quantities are dimensionless: energies in units of J_max, times in
//! units of 1/J_max (ħ = 1).

pub mod dynamics;
pub mod error;
pub mod export;
pub mod genetic;
pub mod hamiltonian;
pub mod robustness;
pub mod spectrum;

pub use error::{Error, Result};

/// Validate an odd p-factor >= 1.
pub(crate) fn check_odd_p(p: u32) -> Result<()> {
    if p == 0 || p % 2 == 0 {
        return Err(Error::InvalidP(p as i64));
    }
    Ok(())
}
