//! Mirror-symmetric genetic algorithm over on-site-energy profiles.
//!
//! Individuals are on-site profiles of an otherwise uniformly coupled chain
//! (all J = 1). Mirror symmetry is enforced structurally: every profile is
//! folded about the chain centre after construction, mutation and
//! crossover, so the whole population lives on the symmetric subspace the
//! transfer condition requires.
//!
//! Fitness rewards the peak transfer fidelity within the time window and
//! penalizes deviation of the spectrum from the target pinch shape:
//! f = (A·F_max − B·υ)/(A·F_max + B·υ), with υ = |Q − target| + σ_body.
//!
//! Determinism contract: the RNG stream of every individual is derived from
//! (seed, generation, index), and population statistics are reduced
//! sequentially, so runs are bit-identical for a given seed regardless of
//! the rayon thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{diagonalize, max_fidelity, DEFAULT_PEAK_GRID, DEFAULT_T_MAX};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, uniform_chain};
use crate::spectrum::spectral_report;

/// Sentinel penalty assigned when a candidate's spectrum degenerates (a
/// body spacing collapses to zero); mutations can do this transiently, so
/// the run continues instead of aborting.
pub const DEGENERATE_PENALTY: f64 = 1e6;

fn default_generations() -> u32 {
    200
}
fn default_population() -> usize {
    1024
}
fn default_mu_initial() -> f64 {
    0.20
}
fn default_mu_final() -> f64 {
    0.05
}
fn default_amplitude() -> (f64, f64) {
    (1.0, 10.0)
}
fn default_t_max() -> f64 {
    DEFAULT_T_MAX
}
fn default_init_range() -> (f64, f64) {
    (0.0, 10.0)
}
fn default_tournament() -> usize {
    3
}
fn default_elite() -> usize {
    1
}

/// Parameters of an evolutionary search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GAConfig {
    /// Chain length N.
    pub n_sites: usize,
    /// Target pinch factor (odd).
    pub p: u32,
    #[serde(default = "default_generations")]
    pub generations: u32,
    #[serde(default = "default_population")]
    pub population_size: usize,
    /// Initial mutation rate μ_i.
    #[serde(default = "default_mu_initial")]
    pub mu_initial: f64,
    /// Final mutation rate μ_f.
    #[serde(default = "default_mu_final")]
    pub mu_final: f64,
    /// Mutation amplitude a is drawn uniformly from this range; the gene
    /// shift is then uniform in [−a, +a].
    #[serde(default = "default_amplitude")]
    pub mutation_amplitude_range: (f64, f64),
    /// Fidelity weight A; `None` resolves to 1 for N ≤ 4 and 4 for larger
    /// chains.
    #[serde(default)]
    pub weight_a: Option<f64>,
    /// Spectral-penalty weight B; `None` resolves to 1.
    #[serde(default)]
    pub weight_b: Option<f64>,
    /// Fidelity evaluation window.
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    /// Initial genes are drawn uniformly from this range.
    #[serde(default = "default_init_range")]
    pub init_range: (f64, f64),
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default = "default_tournament")]
    pub tournament_size: usize,
    #[serde(default = "default_elite")]
    pub elite_count: usize,
}

impl GAConfig {
    /// Defaults for a chain of `n_sites` sites targeting pinch factor `p`.
    pub fn new(n_sites: usize, p: u32) -> Self {
        GAConfig {
            n_sites,
            p,
            generations: default_generations(),
            population_size: default_population(),
            mu_initial: default_mu_initial(),
            mu_final: default_mu_final(),
            mutation_amplitude_range: default_amplitude(),
            weight_a: None,
            weight_b: None,
            t_max: default_t_max(),
            init_range: default_init_range(),
            rng_seed: 0,
            tournament_size: default_tournament(),
            elite_count: default_elite(),
        }
    }

    /// Resolved fidelity weight.
    pub fn weight_a(&self) -> f64 {
        self.weight_a
            .unwrap_or(if self.n_sites <= 4 { 1.0 } else { 4.0 })
    }

    /// Resolved spectral-penalty weight.
    pub fn weight_b(&self) -> f64 {
        self.weight_b.unwrap_or(1.0)
    }

    /// Copy with the optional weights made explicit, for result echoes.
    pub fn resolved(&self) -> GAConfig {
        GAConfig {
            weight_a: Some(self.weight_a()),
            weight_b: Some(self.weight_b()),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.n_sites < 2 {
            problems.push(format!("n_sites {} < 2", self.n_sites));
        }
        if self.p == 0 || self.p % 2 == 0 {
            problems.push(format!("p {} is not an odd integer >= 1", self.p));
        }
        if self.generations < 1 {
            problems.push("generations < 1".into());
        }
        if self.population_size < 2 {
            problems.push(format!("population_size {} < 2", self.population_size));
        }
        if !(0.0..=1.0).contains(&self.mu_final)
            || !(0.0..=1.0).contains(&self.mu_initial)
            || self.mu_final > self.mu_initial
        {
            problems.push(format!(
                "mutation rates must satisfy 0 <= mu_final <= mu_initial <= 1, got {} and {}",
                self.mu_final, self.mu_initial
            ));
        }
        let (a_lo, a_hi) = self.mutation_amplitude_range;
        if !(a_lo >= 0.0 && a_hi >= a_lo) {
            problems.push(format!("bad mutation amplitude range [{a_lo}, {a_hi}]"));
        }
        if self.init_range.1 < self.init_range.0 {
            problems.push(format!(
                "bad init range [{}, {}]",
                self.init_range.0, self.init_range.1
            ));
        }
        if !(self.weight_a() > 0.0) || !(self.weight_b() > 0.0) {
            problems.push("weights A and B must be positive".into());
        }
        if !(self.t_max > 0.0) {
            problems.push(format!("t_max {} must be positive", self.t_max));
        }
        if self.tournament_size < 1 {
            problems.push("tournament_size < 1".into());
        }
        if self.elite_count >= self.population_size {
            problems.push(format!(
                "elite_count {} must be below population_size {}",
                self.elite_count, self.population_size
            ));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(problems.join("; ")))
        }
    }
}

/// Cached evaluation of a candidate profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub f_max: f64,
    pub t_peak: f64,
    pub eigenvalues: Vec<f64>,
    pub upsilon: f64,
    pub fitness: f64,
}

/// One candidate on-site profile; mirror-symmetric by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub onsite: Vec<f64>,
    pub eval: Option<Evaluation>,
}

impl Individual {
    /// Fold the genes about the chain centre and wrap them, cache empty.
    pub fn new(onsite: Vec<f64>) -> Self {
        Individual {
            onsite: mirror_fold(&onsite),
            eval: None,
        }
    }

    fn fitness(&self) -> f64 {
        self.eval.as_ref().expect("individual not evaluated").fitness
    }
}

/// Normalized fitness (A·f_max − B·υ)/(A·f_max + B·υ); zero when the
/// denominator vanishes.
pub fn fitness(f_max: f64, upsilon: f64, a: f64, b: f64) -> f64 {
    let num = a * f_max - b * upsilon;
    let den = a * f_max + b * upsilon;
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Linear mutation schedule μ(g) = μ_i − g·(μ_i − μ_f)/G, with both
/// endpoints exact.
pub fn mutation_rate(g: u32, cfg: &GAConfig) -> Result<f64> {
    let big_g = cfg.generations;
    if g > big_g {
        return Err(Error::GenerationOutOfRange { g, max: big_g });
    }
    let frac = g as f64 / big_g as f64;
    Ok(cfg.mu_initial * (1.0 - frac) + cfg.mu_final * frac)
}

/// Reflect the left half of the profile about the chain centre so the
/// output satisfies ε_i = ε_{N−i+1} exactly.
pub fn mirror_fold(onsite: &[f64]) -> Vec<f64> {
    let n = onsite.len();
    let mut out = onsite.to_vec();
    for i in (n + 1) / 2..n {
        out[i] = out[n - 1 - i];
    }
    out
}

/// Perturb each gene with probability `rate` by δ ~ U[−a, +a], a ~
/// U[a_lo, a_hi], then fold; the cache is invalidated.
pub fn mutate<R: Rng>(ind: &Individual, rate: f64, cfg: &GAConfig, rng: &mut R) -> Individual {
    assert!((0.0..=1.0).contains(&rate), "mutation rate {rate} not in [0,1]");
    let (a_lo, a_hi) = cfg.mutation_amplitude_range;
    let mut genes = ind.onsite.clone();
    for gene in genes.iter_mut() {
        if rng.gen::<f64>() < rate {
            let a = rng.gen_range(a_lo..=a_hi);
            *gene += rng.gen_range(-a..=a);
        }
    }
    Individual::new(genes)
}

/// Uniform crossover: each gene comes from either parent with probability
/// 1/2; the child is folded.
pub fn crossover<R: Rng>(p1: &Individual, p2: &Individual, rng: &mut R) -> Result<Individual> {
    if p1.onsite.len() != p2.onsite.len() {
        return Err(Error::GeneCountMismatch {
            left: p1.onsite.len(),
            right: p2.onsite.len(),
        });
    }
    let genes = p1
        .onsite
        .iter()
        .zip(&p2.onsite)
        .map(|(&a, &b)| if rng.gen::<bool>() { a } else { b })
        .collect();
    Ok(Individual::new(genes))
}

/// Evaluate a candidate: build the uniform chain, diagonalize, find the
/// fidelity peak within [0, t_max], and score the spectrum against the
/// configured p. A degenerate spectrum gets the sentinel penalty instead of
/// aborting. Returns a copy with the cache filled; already-evaluated
/// individuals pass through unchanged.
pub fn evaluate(ind: &Individual, cfg: &GAConfig) -> Result<Individual> {
    if ind.eval.is_some() {
        return Ok(ind.clone());
    }
    let spec = uniform_chain(cfg.n_sites, ind.onsite.clone())?;
    let eig = diagonalize(&build_hamiltonian(&spec)?)?;
    let (f_max, t_peak) = max_fidelity(&eig, 1, cfg.n_sites, cfg.t_max, DEFAULT_PEAK_GRID);
    let upsilon = if cfg.n_sites < 3 {
        // Two-site chains have no spectrum body to shape.
        0.0
    } else {
        match spectral_report(eig.eigenvalues(), cfg.p) {
            Ok(report) => report.penalty,
            Err(Error::DegenerateSpectrum) => DEGENERATE_PENALTY,
            Err(e) => return Err(e),
        }
    };
    let fit = fitness(f_max, upsilon, cfg.weight_a(), cfg.weight_b());
    Ok(Individual {
        onsite: ind.onsite.clone(),
        eval: Some(Evaluation {
            f_max,
            t_peak,
            eigenvalues: eig.eigenvalues().to_vec(),
            upsilon,
            fitness: fit,
        }),
    })
}

/// Per-generation summary statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: u32,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_f_max: f64,
    pub best_upsilon: f64,
}

/// Archived outcome of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GAResult {
    /// Fittest individual over the whole run (raw genes).
    pub best: Individual,
    /// Best profile with the central site gauge-shifted to zero, for
    /// comparison across runs.
    pub best_gauge_fixed_onsite: Vec<f64>,
    /// One entry per evolution step.
    pub history: Vec<GenerationStats>,
    /// Config echo with optional weights resolved.
    pub config: GAConfig,
    pub seed: u64,
}

/// Shift a profile so the central site sits at zero energy. For even N the
/// two central sites agree by mirror symmetry.
pub fn gauge_fix(onsite: &[f64]) -> Vec<f64> {
    let centre = onsite[(onsite.len() - 1) / 2];
    onsite.iter().map(|e| e - centre).collect()
}

fn child_rng(seed: u64, generation: u32, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation as u64) << 32) | (index as u64 & 0xffff_ffff));
    rng
}

fn evaluate_population(pop: &mut Vec<Individual>, cfg: &GAConfig) -> Result<()> {
    let evaluated: Result<Vec<Individual>> =
        pop.par_iter().map(|ind| evaluate(ind, cfg)).collect();
    *pop = evaluated?;
    Ok(())
}

/// Indices of the `count` fittest individuals, ties broken by index.
fn select_elites(pop: &[Individual], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&a, &b| {
        pop[b]
            .fitness()
            .partial_cmp(&pop[a].fitness())
            .expect("fitness is NaN")
            .then(a.cmp(&b))
    });
    order.truncate(count);
    order
}

fn tournament<R: Rng>(pop: &[Individual], size: usize, rng: &mut R) -> usize {
    let mut best = rng.gen_range(0..pop.len());
    for _ in 1..size {
        let pick = rng.gen_range(0..pop.len());
        if pop[pick].fitness() > pop[best].fitness() {
            best = pick;
        }
    }
    best
}

fn best_index(pop: &[Individual]) -> usize {
    let mut best = 0;
    for i in 1..pop.len() {
        if pop[i].fitness() > pop[best].fitness() {
            best = i;
        }
    }
    best
}

/// Run the full evolutionary loop: evaluate → select (tournament) →
/// crossover → mutate, with elitism, for `generations` steps.
/// Deterministic for a given seed at any thread count.
pub fn run_ga(cfg: &GAConfig) -> Result<GAResult> {
    cfg.validate()?;
    let cfg = cfg.resolved();
    let seed = cfg.rng_seed;
    let pop_size = cfg.population_size;
    let (lo, hi) = cfg.init_range;

    let mut pop: Vec<Individual> = (0..pop_size)
        .map(|i| {
            let mut rng = child_rng(seed, 0, i);
            Individual::new((0..cfg.n_sites).map(|_| rng.gen_range(lo..=hi)).collect())
        })
        .collect();
    evaluate_population(&mut pop, &cfg)?;
    let mut best = pop[best_index(&pop)].clone();

    let mut history = Vec::with_capacity(cfg.generations as usize);
    for g in 1..=cfg.generations {
        let rate = mutation_rate(g - 1, &cfg)?;
        let prev = pop;
        let mut next: Vec<Individual> = select_elites(&prev, cfg.elite_count)
            .into_iter()
            .map(|e| prev[e].clone())
            .collect();
        for i in next.len()..pop_size {
            let mut rng = child_rng(seed, g, i);
            let p1 = tournament(&prev, cfg.tournament_size, &mut rng);
            let p2 = tournament(&prev, cfg.tournament_size, &mut rng);
            let child = crossover(&prev[p1], &prev[p2], &mut rng)?;
            next.push(mutate(&child, rate, &cfg, &mut rng));
        }
        pop = next;
        evaluate_population(&mut pop, &cfg)?;

        let bi = best_index(&pop);
        if pop[bi].fitness() > best.fitness() {
            best = pop[bi].clone();
        }
        let mean_fitness =
            pop.iter().map(Individual::fitness).sum::<f64>() / pop_size as f64;
        let top = pop[bi].eval.as_ref().expect("evaluated");
        history.push(GenerationStats {
            generation: g,
            best_fitness: top.fitness,
            mean_fitness,
            best_f_max: top.f_max,
            best_upsilon: top.upsilon,
        });
    }

    let best_gauge_fixed_onsite = gauge_fix(&best.onsite);
    Ok(GAResult {
        best,
        best_gauge_fixed_onsite,
        history,
        config: cfg,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::analytic_epsilon_n3;
    use std::f64::consts::PI;

    #[test]
    fn fitness_examples() {
        assert_eq!(fitness(0.9, 0.0, 1.0, 1.0), 1.0);
        assert_eq!(fitness(0.9, 0.0, 3.0, 0.5), 1.0);
        assert_eq!(fitness(0.5, 0.5, 1.0, 1.0), 0.0);
        assert!((fitness(0.8, 0.4, 2.0, 1.0) - 0.6).abs() < 1e-15);
        // sentinel: zero denominator
        assert_eq!(fitness(0.0, 0.0, 1.0, 1.0), 0.0);
    }

    #[test]
    fn fitness_stays_in_open_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let f = rng.gen_range(1e-12..=1.0);
            let u = rng.gen_range(0.0..=1e7);
            let a = rng.gen_range(1e-3..=10.0);
            let b = rng.gen_range(1e-3..=10.0);
            let fit = fitness(f, u, a, b);
            assert!(fit > -1.0 && fit <= 1.0, "fitness {fit}");
        }
    }

    #[test]
    fn mutation_schedule_endpoints_exact() {
        let cfg = GAConfig::new(4, 3);
        assert_eq!(mutation_rate(0, &cfg).unwrap(), 0.20);
        assert_eq!(mutation_rate(cfg.generations, &cfg).unwrap(), 0.05);
        assert_eq!(mutation_rate(100, &cfg).unwrap(), 0.125);
        assert!(matches!(
            mutation_rate(201, &cfg),
            Err(Error::GenerationOutOfRange { g: 201, max: 200 })
        ));
    }

    #[test]
    fn mirror_fold_examples() {
        assert_eq!(
            mirror_fold(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]),
            vec![1.0, 2.0, 3.0, 3.0, 2.0, 1.0]
        );
        assert_eq!(mirror_fold(&[7.0, 0.0, 7.0]), vec![7.0, 0.0, 7.0]);
        assert_eq!(mirror_fold(&[4.0, 9.0]), vec![4.0, 4.0]);
    }

    #[test]
    fn mutate_rate_zero_is_identity() {
        let cfg = GAConfig::new(5, 3);
        let ind = Individual::new(vec![1.0, 2.0, 3.0, 2.0, 1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = mutate(&ind, 0.0, &cfg, &mut rng);
        assert_eq!(out.onsite, ind.onsite);
        assert!(out.eval.is_none());
    }

    #[test]
    fn mutate_full_rate_unit_amplitude() {
        let mut cfg = GAConfig::new(6, 3);
        cfg.mutation_amplitude_range = (1.0, 1.0);
        let base = Individual::new(vec![5.0; 6]);
        for seed in 0..1000u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = mutate(&base, 1.0, &cfg, &mut rng);
            for i in 0..3 {
                assert!((out.onsite[i] - 5.0).abs() <= 1.0, "seed {seed}");
                assert_eq!(out.onsite[i], out.onsite[5 - i], "mirror broken");
            }
        }
    }

    #[test]
    fn mutate_is_seed_deterministic() {
        let cfg = GAConfig::new(5, 3);
        let ind = Individual::new(vec![0.0, 1.0, 2.0, 1.0, 0.0]);
        let a = mutate(&ind, 0.7, &cfg, &mut ChaCha8Rng::seed_from_u64(99));
        let b = mutate(&ind, 0.7, &cfg, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(a.onsite, b.onsite);
    }

    #[test]
    fn crossover_identical_parents() {
        let p = Individual::new(vec![1.0, 2.0, 2.0, 1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let child = crossover(&p, &p, &mut rng).unwrap();
        assert_eq!(child.onsite, p.onsite);
    }

    #[test]
    fn crossover_is_balanced_and_mirror_preserving() {
        let p1 = Individual::new(vec![0.0; 7]);
        let p2 = Individual::new(vec![1.0; 7]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut from_p1 = 0usize;
        let trials = 10_000;
        for _ in 0..trials {
            let child = crossover(&p1, &p2, &mut rng).unwrap();
            // count only the free (left-half) genes; the rest are folds
            for i in 0..4 {
                if child.onsite[i] == 0.0 {
                    from_p1 += 1;
                }
            }
            for i in 0..7 {
                assert_eq!(child.onsite[i], child.onsite[6 - i]);
            }
        }
        let freq = from_p1 as f64 / (4 * trials) as f64;
        assert!((freq - 0.5).abs() < 0.02, "parent-1 gene frequency {freq}");
    }

    #[test]
    fn crossover_size_mismatch() {
        let p1 = Individual::new(vec![0.0; 3]);
        let p2 = Individual::new(vec![0.0; 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            crossover(&p1, &p2, &mut rng),
            Err(Error::GeneCountMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn evaluate_analytic_n3_fixed_point() {
        let cfg = GAConfig::new(3, 3);
        let eps = analytic_epsilon_n3(3).unwrap();
        let ind = evaluate(&Individual::new(vec![eps, 0.0, eps]), &cfg).unwrap();
        let eval = ind.eval.unwrap();
        assert!(eval.f_max >= 1.0 - 1e-6, "f_max {}", eval.f_max);
        assert!(eval.upsilon <= 1e-6, "upsilon {}", eval.upsilon);
        assert!(eval.fitness > 1.0 - 1e-5, "fitness {}", eval.fitness);
    }

    #[test]
    fn evaluate_two_site_chain() {
        let cfg = GAConfig::new(2, 1);
        let ind = evaluate(&Individual::new(vec![0.0, 0.0]), &cfg).unwrap();
        let eval = ind.eval.unwrap();
        assert!((eval.f_max - 1.0).abs() < 1e-9);
        assert!((eval.t_peak - PI / 2.0).abs() < 1e-4);
    }

    #[test]
    fn uniform_five_site_chain_cannot_reach_pst() {
        let cfg = GAConfig::new(5, 3);
        let ind = evaluate(&Individual::new(vec![0.0; 5]), &cfg).unwrap();
        assert!(ind.eval.unwrap().fitness < 1.0);
    }

    #[test]
    fn gauge_shift_leaves_evaluation_invariant() {
        let cfg = GAConfig::new(5, 3);
        let genes = vec![2.3, 0.7, 0.1, 0.7, 2.3];
        let shifted: Vec<f64> = genes.iter().map(|e| e + 17.25).collect();
        let a = evaluate(&Individual::new(genes), &cfg).unwrap().eval.unwrap();
        let b = evaluate(&Individual::new(shifted), &cfg).unwrap().eval.unwrap();
        assert!((a.f_max - b.f_max).abs() <= 1e-10);
        assert!((a.upsilon - b.upsilon).abs() <= 1e-10);
        assert!((a.fitness - b.fitness).abs() <= 1e-10);
    }

    fn smoke_config() -> GAConfig {
        let mut cfg = GAConfig::new(3, 3);
        cfg.population_size = 16;
        cfg.generations = 12;
        cfg.rng_seed = 5;
        cfg
    }

    #[test]
    fn run_ga_minimal_smoke() {
        let mut cfg = GAConfig::new(3, 1);
        cfg.population_size = 2;
        cfg.generations = 1;
        let result = run_ga(&cfg).unwrap();
        assert_eq!(result.history.len(), 1);
        assert!(result.best.eval.is_some());
    }

    #[test]
    fn run_ga_monotone_best_fitness_with_elitism() {
        let result = run_ga(&smoke_config()).unwrap();
        assert_eq!(result.history.len(), 12);
        for w in result.history.windows(2) {
            assert!(
                w[1].best_fitness >= w[0].best_fitness,
                "best fitness regressed: {} -> {}",
                w[0].best_fitness,
                w[1].best_fitness
            );
        }
    }

    #[test]
    fn run_ga_population_stays_mirror_symmetric() {
        let result = run_ga(&smoke_config()).unwrap();
        let n = result.best.onsite.len();
        for i in 0..n {
            assert_eq!(result.best.onsite[i], result.best.onsite[n - 1 - i]);
        }
    }

    #[test]
    fn run_ga_deterministic_across_thread_counts() {
        let cfg = smoke_config();
        let pool1 = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let pool8 = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap();
        let r1 = pool1.install(|| run_ga(&cfg)).unwrap();
        let r8 = pool8.install(|| run_ga(&cfg)).unwrap();
        let j1 = serde_json::to_string(&r1).unwrap();
        let j8 = serde_json::to_string(&r8).unwrap();
        assert_eq!(j1, j8);
    }

    #[test]
    fn run_ga_converges_to_analytic_n3() {
        let mut cfg = GAConfig::new(3, 3);
        cfg.population_size = 128;
        cfg.generations = 80;
        cfg.rng_seed = 1;
        let result = run_ga(&cfg).unwrap();
        let eps = analytic_epsilon_n3(3).unwrap();
        let outer = result.best_gauge_fixed_onsite[0];
        assert!(
            (outer - eps).abs() < 5e-2,
            "outer epsilon {outer} vs analytic {eps}"
        );
    }

    #[test]
    fn invalid_configs_are_rejected_with_all_violations() {
        let mut cfg = GAConfig::new(1, 2);
        cfg.population_size = 1;
        cfg.mu_final = 0.9; // above mu_initial
        let err = run_ga(&cfg).unwrap_err();
        let msg = err.to_string();
        for needle in ["n_sites", "odd", "population_size", "mu_final"] {
            assert!(msg.contains(needle), "missing '{needle}' in: {msg}");
        }
    }
}
