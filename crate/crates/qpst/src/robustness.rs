//! Precision degradation and stochastic perturbation analysis.
//!
//! Two noise models for a candidate configuration:
//!
//! - conventional rounding of every on-site energy to s significant
//!   figures (mirror symmetry survives);
//! - additive static disorder ε_i → ε_i + J_max·r_i·ξ with independent
//!   r_i ~ U[−0.5, 0.5] (mirror symmetry generally breaks).
//!
//! Monte Carlo sampling reports both the mean of the per-sample peak
//! fidelities (table-style numbers) and the time-resolved mean-fidelity
//! trace whose maximum is the figure-style quote; the two readings are
//! close but not identical, so both are computed and labelled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{diagonalize, fidelity_at, max_fidelity, Peak, DEFAULT_PEAK_GRID};
use crate::error::Result;
use crate::hamiltonian::{build_hamiltonian, ChainSpec};

/// Conventional round-half-away-from-zero to `s` significant figures.
pub fn round_sig_figs(x: f64, s: u32) -> f64 {
    assert!(s >= 1, "need at least one significant figure");
    if x == 0.0 {
        return 0.0;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(s as i32 - 1 - magnitude);
    (x * factor).round() / factor
}

/// Copy of the spec with every on-site energy rounded to `s` significant
/// figures; couplings are untouched.
pub fn round_spec(spec: &ChainSpec, s: u32) -> ChainSpec {
    ChainSpec {
        onsite: spec.onsite.iter().map(|&e| round_sig_figs(e, s)).collect(),
        ..spec.clone()
    }
}

/// Peak transfer fidelity of the spec after rounding its on-site energies
/// to `s` significant figures.
pub fn rounded_fidelity(spec: &ChainSpec, s: u32, t_max: f64) -> Result<f64> {
    peak_fidelity(&round_spec(spec, s), t_max)
}

fn peak_fidelity(spec: &ChainSpec, t_max: f64) -> Result<f64> {
    let eig = diagonalize(&build_hamiltonian(spec)?)?;
    Ok(max_fidelity(&eig, 1, spec.n_sites, t_max, DEFAULT_PEAK_GRID).0)
}

/// Effective on-site energies under static asymmetric disorder:
/// ε_i → ε_i + J_max·r_i·ξ with independent r_i ~ U[−0.5, 0.5].
pub fn perturb<R: Rng>(spec: &ChainSpec, xi: f64, rng: &mut R) -> ChainSpec {
    assert!(xi >= 0.0, "error strength must be non-negative, got {xi}");
    let onsite = spec
        .onsite
        .iter()
        .map(|&e| e + spec.j_max * rng.gen_range(-0.5..=0.5) * xi)
        .collect();
    ChainSpec {
        onsite,
        ..spec.clone()
    }
}

/// Time-resolved mean fidelity with its standard-deviation band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanTrace {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

/// Monte Carlo statistics at one error strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloStats {
    pub xi: f64,
    pub samples: usize,
    /// Mean of the per-sample peak fidelities.
    pub mean_peak_fidelity: f64,
    /// Population standard deviation of the per-sample peaks.
    pub std_dev: f64,
    /// std_dev / √samples.
    pub std_error: f64,
    /// Mean fidelity versus time, when requested.
    pub mean_trace: Option<MeanTrace>,
    /// Maximum of the mean trace (the figure-style quote).
    pub max_of_mean_trace: Option<Peak>,
}

/// Sample `samples` independent perturbations of strength `xi` and collect
/// peak-fidelity statistics; with `trace_steps` set, also accumulate the
/// mean fidelity trace on that many uniform time samples.
///
/// The RNG stream of sample k derives from (rng_seed, k), so the report is
/// reproducible at any thread count.
pub fn monte_carlo(
    spec: &ChainSpec,
    xi: f64,
    samples: usize,
    t_max: f64,
    trace_steps: Option<usize>,
    rng_seed: u64,
) -> Result<MonteCarloStats> {
    assert!(samples >= 1, "need at least one sample");
    let n = spec.n_sites;
    let times: Option<Vec<f64>> = trace_steps.map(|steps| {
        assert!(steps >= 2, "need at least 2 trace samples");
        let dt = t_max / (steps - 1) as f64;
        (0..steps).map(|i| i as f64 * dt).collect()
    });

    let per_sample: Result<Vec<(f64, Vec<f64>)>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            rng.set_stream(k as u64);
            let sample = perturb(spec, xi, &mut rng);
            let eig = diagonalize(&build_hamiltonian(&sample)?)?;
            let (peak, _) = max_fidelity(&eig, 1, n, t_max, DEFAULT_PEAK_GRID);
            let curve = times
                .as_ref()
                .map(|ts| ts.iter().map(|&t| fidelity_at(&eig, t, 1, n)).collect())
                .unwrap_or_default();
            Ok((peak, curve))
        })
        .collect();
    let per_sample = per_sample?;

    let peaks: Vec<f64> = per_sample.iter().map(|s| s.0).collect();
    let mean = peaks.iter().sum::<f64>() / samples as f64;
    let var = peaks.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / samples as f64;
    let std_dev = var.sqrt();

    let (mean_trace, max_of_mean_trace) = match times {
        None => (None, None),
        Some(times) => {
            let steps = times.len();
            let mut mean_curve = vec![0.0; steps];
            for (_, curve) in &per_sample {
                for (m, f) in mean_curve.iter_mut().zip(curve) {
                    *m += f;
                }
            }
            for m in mean_curve.iter_mut() {
                *m /= samples as f64;
            }
            let mut std_curve = vec![0.0; steps];
            for (_, curve) in &per_sample {
                for ((s, f), m) in std_curve.iter_mut().zip(curve).zip(&mean_curve) {
                    *s += (f - m) * (f - m);
                }
            }
            for s in std_curve.iter_mut() {
                *s = (*s / samples as f64).sqrt();
            }
            let best = (0..steps).fold(0usize, |b, i| if mean_curve[i] > mean_curve[b] { i } else { b });
            let peak = Peak {
                t_peak: times[best],
                f_max: mean_curve[best],
            };
            (
                Some(MeanTrace {
                    times,
                    mean: mean_curve,
                    std: std_curve,
                }),
                Some(peak),
            )
        }
    };

    Ok(MonteCarloStats {
        xi,
        samples,
        mean_peak_fidelity: mean,
        std_dev,
        std_error: std_dev / (samples as f64).sqrt(),
        mean_trace,
        max_of_mean_trace,
    })
}

/// Full stress report for a configuration: unperturbed peak fidelity,
/// significant-figure sweep, and Monte Carlo rows per error strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub base_fidelity: f64,
    pub sig_fig_fidelities: Vec<SigFigFidelity>,
    pub monte_carlo: Vec<MonteCarloStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigFigFidelity {
    pub sig_figs: u32,
    pub fidelity: f64,
}

/// Run the whole analysis in one call.
pub fn analyze(
    spec: &ChainSpec,
    sig_figs: &[u32],
    xis: &[f64],
    samples: usize,
    t_max: f64,
    trace_steps: Option<usize>,
    rng_seed: u64,
) -> Result<RobustnessReport> {
    let base_fidelity = peak_fidelity(spec, t_max)?;
    let sig_fig_fidelities = sig_figs
        .iter()
        .map(|&s| {
            Ok(SigFigFidelity {
                sig_figs: s,
                fidelity: rounded_fidelity(spec, s, t_max)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let monte_carlo = xis
        .iter()
        .map(|&xi| monte_carlo(spec, xi, samples, t_max, trace_steps, rng_seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(RobustnessReport {
        base_fidelity,
        sig_fig_fidelities,
        monte_carlo,
    })
}
