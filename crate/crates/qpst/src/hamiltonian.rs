//! Single-excitation XY chain Hamiltonians and reference protocols.
//!
//! In the single-excitation subspace an N-site XY chain reduces to a real
//! symmetric tridiagonal N×N matrix: nearest-neighbour couplings J_{i,i+1}
//! on the off-diagonals and on-site energies ε_i on the diagonal. Energies
//! are dimensionless in units of J_max, times in units of 1/J_max (ħ = 1).
//!
//! Basis convention: site 1 is the first matrix row, so the transfer
//! protocol sends the unit vector on index 1 to the unit vector on index N.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical configuration of a chain: site count, inter-site couplings and
/// on-site energies, all in units of the reference energy `j_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChainSpecRaw")]
pub struct ChainSpec {
    /// Number of sites N (>= 2).
    pub n_sites: usize,
    /// Couplings J_{i,i+1}, length N-1, all positive.
    pub couplings: Vec<f64>,
    /// On-site energies ε_i, length N.
    pub onsite: Vec<f64>,
    /// Reference energy scale; equals the largest coupling (1 for uniform
    /// chains).
    pub j_max: f64,
}

/// Serde shadow: `couplings` omitted means uniform 1.0, `j_max` omitted
/// means the largest coupling.
#[derive(Deserialize)]
struct ChainSpecRaw {
    n_sites: usize,
    #[serde(default)]
    couplings: Option<Vec<f64>>,
    onsite: Vec<f64>,
    #[serde(default)]
    j_max: Option<f64>,
}

impl TryFrom<ChainSpecRaw> for ChainSpec {
    type Error = Error;

    fn try_from(raw: ChainSpecRaw) -> Result<Self> {
        let n = raw.n_sites;
        let couplings = raw
            .couplings
            .unwrap_or_else(|| vec![1.0; n.saturating_sub(1)]);
        let j_max = raw
            .j_max
            .unwrap_or_else(|| couplings.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        let spec = ChainSpec {
            n_sites: n,
            couplings,
            onsite: raw.onsite,
            j_max,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ChainSpec {
    /// Build a spec from explicit couplings and on-site energies; `j_max`
    /// is set to the largest coupling.
    pub fn new(couplings: Vec<f64>, onsite: Vec<f64>) -> Result<Self> {
        let j_max = couplings.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let spec = ChainSpec {
            n_sites: onsite.len(),
            couplings,
            onsite,
            j_max,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Check the structural invariants: field lengths, coupling positivity,
    /// and `j_max` = largest coupling.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites;
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        if self.onsite.len() != n {
            return Err(Error::InvalidSpec(format!(
                "onsite length {} != n_sites {}",
                self.onsite.len(),
                n
            )));
        }
        if self.couplings.len() != n - 1 {
            return Err(Error::InvalidSpec(format!(
                "couplings length {} != n_sites - 1 = {}",
                self.couplings.len(),
                n - 1
            )));
        }
        if let Some(j) = self.couplings.iter().find(|j| !(**j > 0.0) || !j.is_finite()) {
            return Err(Error::InvalidSpec(format!("non-positive coupling {j}")));
        }
        if self.onsite.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidSpec("non-finite on-site energy".into()));
        }
        let max_j = self.couplings.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !(self.j_max > 0.0) || (self.j_max - max_j).abs() > 1e-9 * max_j.abs() {
            return Err(Error::InvalidSpec(format!(
                "j_max {} does not match largest coupling {max_j}",
                self.j_max
            )));
        }
        Ok(())
    }
}

/// Single-excitation Hamiltonian: a real symmetric tridiagonal matrix,
/// guaranteed by construction through [`build_hamiltonian`].
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: DMatrix<f64>,
}

impl Hamiltonian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn n_sites(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Assemble the single-excitation Hamiltonian of a chain: diagonal = onsite
/// energies, super/sub-diagonal = couplings, everything else zero.
pub fn build_hamiltonian(spec: &ChainSpec) -> Result<Hamiltonian> {
    spec.validate()?;
    let n = spec.n_sites;
    let mut m = DMatrix::zeros(n, n);
    for (i, &e) in spec.onsite.iter().enumerate() {
        m[(i, i)] = e;
    }
    for (i, &j) in spec.couplings.iter().enumerate() {
        m[(i, i + 1)] = j;
        m[(i + 1, i)] = j;
    }
    Ok(Hamiltonian { matrix: m })
}

/// Uniformly coupled chain (all J = 1, j_max = 1) with the given on-site
/// energies.
pub fn uniform_chain(n: usize, onsite: Vec<f64>) -> Result<ChainSpec> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    if onsite.len() != n {
        return Err(Error::InvalidSpec(format!(
            "onsite length {} != n_sites {n}",
            onsite.len()
        )));
    }
    let spec = ChainSpec {
        n_sites: n,
        couplings: vec![1.0; n - 1],
        onsite,
        j_max: 1.0,
    };
    spec.validate()?;
    Ok(spec)
}

/// The classic perfect-transfer coupling profile J_{i,i+1} = j0·√((n−i)·i),
/// mirror-symmetric with the maximum at the chain centre.
pub fn christandl_couplings(n: usize, j0: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    Ok((1..n)
        .map(|i| j0 * (((n - i) * i) as f64).sqrt())
        .collect())
}

/// Full chain spec for the Christandl protocol with zero on-site energies.
pub fn christandl_chain(n: usize, j0: f64) -> Result<ChainSpec> {
    ChainSpec::new(christandl_couplings(n, j0)?, vec![0.0; n])
}

/// Parabolic on-site profile ε_i = eps0·|i − c|² centred at c = (N+1)/2,
/// so the output is mirror-symmetric exactly.
pub fn parabolic_onsite(n: usize, eps0: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let c = (n as f64 + 1.0) / 2.0;
    Ok((1..=n)
        .map(|i| {
            let d = i as f64 - c;
            eps0 * d * d
        })
        .collect())
}

/// True iff the spec is mirror-symmetric about the chain midpoint:
/// ε_i = ε_{N−i+1} and J_{i,i+1} = J_{N−i,N−i+1} within `tol`.
pub fn check_mirror_symmetry(spec: &ChainSpec, tol: f64) -> bool {
    let n = spec.n_sites;
    let eps_ok = (0..n).all(|i| (spec.onsite[i] - spec.onsite[n - 1 - i]).abs() <= tol);
    let j_ok = (0..n - 1).all(|i| (spec.couplings[i] - spec.couplings[n - 2 - i]).abs() <= tol);
    eps_ok && j_ok
}

/// The anti-diagonal permutation M that reverses the site order; chains are
/// mirror-symmetric exactly when [H, M] = 0.
pub fn mirror_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |r, c| if r + c == n - 1 { 1.0 } else { 0.0 })
}
