//! Exact time evolution in the single-excitation subspace.
//!
//! Everything runs through the spectral decomposition of the (real,
//! symmetric, tridiagonal) chain Hamiltonian: the transfer amplitude from
//! site s to site q is Σ_n exp(−i·E_n·t)·V[q,n]·V[s,n] and the fidelity is
//! its squared modulus. Site indices are 1-based throughout, matching the
//! chain convention (site 1 = first matrix row).

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;

/// Default evaluation window t·J_max = 30.
pub const DEFAULT_T_MAX: f64 = 30.0;
/// Default coarse-scan resolution for peak finding.
pub const DEFAULT_PEAK_GRID: usize = 4000;
/// Peak refinement stops once the time bracket is narrower than this.
const BRACKET_TOL: f64 = 1e-6;
/// Coarse local maxima within this margin of the global coarse maximum are
/// refined as peak candidates.
const CANDIDATE_TOL: f64 = 1e-3;
/// Refined peaks within this margin of the best refined value count as
/// ties; the earliest tied peak wins.
const TIE_TOL: f64 = 1e-9;

/// Eigendecomposition of a chain Hamiltonian: eigenvalues ascending, column
/// n of `eigenvectors` paired with `eigenvalues[n]`.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl EigenSystem {
    pub fn n_sites(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in ascending order, units of J_max.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as matrix columns.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }
}

/// Diagonalize a chain Hamiltonian, sorting the spectrum ascending.
pub fn diagonalize(h: &Hamiltonian) -> Result<EigenSystem> {
    let se = SymmetricEigen::try_new(h.matrix().clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;
    let n = h.n_sites();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .expect("eigenvalue is NaN")
            .then(a.cmp(&b))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        eigenvectors.set_column(col, &se.eigenvectors.column(k));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Transfer fidelity |⟨target| e^{−iHt} |source⟩|² at time `t`.
/// `source`/`target` are 1-based site indices.
pub fn fidelity_at(eig: &EigenSystem, t: f64, source: usize, target: usize) -> f64 {
    let coeffs = overlap_coefficients(eig, source, target);
    assert!(t >= 0.0, "time must be non-negative, got {t}");
    fidelity_from_coefficients(&coeffs, eig.eigenvalues(), t)
}

fn overlap_coefficients(eig: &EigenSystem, source: usize, target: usize) -> Vec<f64> {
    let n = eig.n_sites();
    assert!(
        (1..=n).contains(&source) && (1..=n).contains(&target),
        "site indices must lie in 1..={n}, got source={source} target={target}"
    );
    let (s, q) = (source - 1, target - 1);
    (0..n)
        .map(|k| eig.eigenvectors[(q, k)] * eig.eigenvectors[(s, k)])
        .collect()
}

fn fidelity_from_coefficients(coeffs: &[f64], eigenvalues: &[f64], t: f64) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (c, e) in coeffs.iter().zip(eigenvalues) {
        let (sin, cos) = (e * t).sin_cos();
        re += c * cos;
        im -= c * sin;
    }
    re * re + im * im
}

/// Maximum transfer fidelity within [0, t_max]: coarse scan of `grid`
/// uniformly spaced samples, then bracketed refinement of every coarse
/// local maximum within [`CANDIDATE_TOL`] of the best sample. Among refined
/// peaks tied within [`TIE_TOL`], the earliest wins, so exact-PST chains
/// report their first mirroring time rather than an arbitrary recurrence.
///
/// Returns `(f_max, t_peak)`; `f_max` is never below the best coarse
/// sample.
pub fn max_fidelity(
    eig: &EigenSystem,
    source: usize,
    target: usize,
    t_max: f64,
    grid: usize,
) -> (f64, f64) {
    assert!(t_max > 0.0, "t_max must be positive, got {t_max}");
    assert!(grid >= 2, "grid must have at least 2 points, got {grid}");
    let coeffs = overlap_coefficients(eig, source, target);
    let f = |t: f64| fidelity_from_coefficients(&coeffs, eig.eigenvalues(), t);

    let dt = t_max / (grid - 1) as f64;
    let samples: Vec<f64> = (0..grid).map(|i| f(i as f64 * dt)).collect();
    let coarse_best = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    // Local maxima (non-strict, endpoints included) near the coarse best.
    let mut candidates = Vec::new();
    for i in 0..grid {
        let left_ok = i == 0 || samples[i] >= samples[i - 1];
        let right_ok = i == grid - 1 || samples[i] >= samples[i + 1];
        if left_ok && right_ok && samples[i] >= coarse_best - CANDIDATE_TOL {
            candidates.push(i);
        }
    }
    let refined: Vec<(f64, f64)> = candidates
        .iter()
        .map(|&i| {
            let lo = if i == 0 { 0.0 } else { (i - 1) as f64 * dt };
            let hi = if i == grid - 1 { t_max } else { (i + 1) as f64 * dt };
            refine_peak(&f, lo, hi, (samples[i], i as f64 * dt))
        })
        .collect();
    // The refined global coarse argmax guarantees best_refined >= every
    // coarse sample, so the earliest-tie pick can never fall below them.
    let best_refined = refined.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let threshold = (best_refined - TIE_TOL).max(coarse_best);
    refined
        .iter()
        .cloned()
        .find(|&(fr, _)| fr >= threshold)
        .expect("the refined coarse argmax always meets the threshold")
}

/// Golden-section refinement on [lo, hi] with a final parabolic polish;
/// tracks the best point ever evaluated (seeded with the coarse sample).
fn refine_peak<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, seed: (f64, f64)) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut best = seed;
    let mut track = |x: f64, fx: f64| {
        if fx > best.0 {
            best = (fx, x);
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    track(x1, f1);
    track(x2, f2);
    while b - a > BRACKET_TOL {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1);
            track(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2);
            track(x2, f2);
        }
    }
    // Parabolic interpolation through the final bracket around the best
    // point.
    let (fa, fb) = (f(a), f(b));
    let m = best.1.clamp(a, b);
    let fm = best.0;
    let denom = (m - a) * (fm - fb) - (m - b) * (fm - fa);
    if denom.abs() > f64::MIN_POSITIVE {
        let x = m - 0.5 * ((m - a).powi(2) * (fm - fb) - (m - b).powi(2) * (fm - fa)) / denom;
        if x.is_finite() && x > lo && x < hi {
            track(x, f(x));
        }
    }
    best
}

/// Location and height of a fidelity peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub t_peak: f64,
    pub f_max: f64,
}

/// Sampled fidelity-versus-time curves for a transfer, against both the
/// target state and the initial state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FidelityTrace {
    /// Sample times, ascending, units 1/J_max.
    pub times: Vec<f64>,
    /// |⟨target|ψ(t)⟩|².
    pub fidelity_to_target: Vec<f64>,
    /// |⟨initial|ψ(t)⟩|².
    pub fidelity_to_initial: Vec<f64>,
    /// Refined global peak of the target-fidelity within the window.
    pub peak: Peak,
}

/// Sample both fidelity curves on `steps` uniform times over [0, t_max].
/// The `peak` field is refined on the [`DEFAULT_PEAK_GRID`] resolution
/// regardless of `steps`.
pub fn trace(
    eig: &EigenSystem,
    source: usize,
    target: usize,
    t_max: f64,
    steps: usize,
) -> FidelityTrace {
    assert!(steps >= 2, "need at least 2 samples, got {steps}");
    assert!(t_max > 0.0, "t_max must be positive, got {t_max}");
    let to_target = overlap_coefficients(eig, source, target);
    let to_initial = overlap_coefficients(eig, source, source);
    let dt = t_max / (steps - 1) as f64;
    let times: Vec<f64> = (0..steps).map(|i| i as f64 * dt).collect();
    let fidelity_to_target = times
        .iter()
        .map(|&t| fidelity_from_coefficients(&to_target, eig.eigenvalues(), t))
        .collect();
    let fidelity_to_initial = times
        .iter()
        .map(|&t| fidelity_from_coefficients(&to_initial, eig.eigenvalues(), t))
        .collect();
    let (f_max, t_peak) = max_fidelity(eig, source, target, t_max, DEFAULT_PEAK_GRID.max(steps));
    FidelityTrace {
        times,
        fidelity_to_target,
        fidelity_to_initial,
        peak: Peak { t_peak, f_max },
    }
}

/// Mirroring time t_m = p·π/(2·alpha) for a pinch spectrum with body
/// spacing 2·alpha.
pub fn predicted_mirror_time(alpha: f64, p: u32) -> Result<f64> {
    crate::check_odd_p(p)?;
    assert!(alpha > 0.0, "alpha must be positive, got {alpha}");
    Ok(p as f64 * std::f64::consts::PI / (2.0 * alpha))
}

/// Number of sub-unity fidelity maxima ("attempts") before the first
/// mirroring: a = (p−1)/2.
pub fn attempts(p: u32) -> Result<u32> {
    crate::check_odd_p(p)?;
    Ok((p - 1) / 2)
}
