//! Sample-size invariance checks for the fourfold Risk Quotient.
//!
//! Two routes: exact scaling of count tables (the population value depends
//! only on cell proportions) and a seeded Monte-Carlo study of the plug-in
//! estimator under multinomial sampling with fixed total `n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::canonical_transform;
use crate::contingency::{nb_2x2, rq_rxc_exact, ContingencyTable};
use crate::error::{NbError, Result};

/// Identifier of the random source, recorded in every [`SimulationResult`].
pub const RNG_ALGORITHM: &str =
    "ChaCha8Rng::seed_from_u64(splitmix64(splitmix64(splitmix64(seed) ^ n) ^ replicate))";

/// Smallest sample size accepted by [`run_estimator_sim`].
pub const MIN_SAMPLE_SIZE: u64 = 4;

/// Cell probabilities `(p11, p12; p21, p22)` of a fourfold population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct PopulationTable2x2 {
    probs: [f64; 4],
}

impl PopulationTable2x2 {
    pub fn new(p11: f64, p12: f64, p21: f64, p22: f64) -> Result<Self> {
        let probs = [p11, p12, p21, p22];
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(NbError::validation(
                "pop",
                format!("probability {p} must be finite and nonnegative"),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(NbError::validation(
                "pop",
                format!("probabilities sum to {sum}, not 1"),
            ));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    /// All mass on a single cell.
    pub fn is_degenerate(&self) -> bool {
        self.probs.contains(&1.0)
    }
}

impl TryFrom<[f64; 4]> for PopulationTable2x2 {
    type Error = NbError;

    fn try_from(p: [f64; 4]) -> Result<Self> {
        Self::new(p[0], p[1], p[2], p[3])
    }
}

impl From<PopulationTable2x2> for [f64; 4] {
    fn from(pop: PopulationTable2x2) -> Self {
        pop.probs
    }
}

/// `RQ / (1 + RQ)` with `RQ = 4|p11 p22 - p12 p21|`. Contains no `n`.
pub fn population_nb_2x2(pop: &PopulationTable2x2) -> f64 {
    let [p11, p12, p21, p22] = pop.probs;
    let rq = 4.0 * (p11 * p22 - p12 * p21).abs();
    canonical_transform(rq)
        .expect("population RQ is finite and nonnegative")
        .value()
}

/// Whether scaling every count by `k` leaves the generalized RQ unchanged,
/// compared as exact fractions.
pub fn scale_check(table: &ContingencyTable, k: u64) -> Result<bool> {
    if k == 0 {
        return Err(NbError::validation("k", "must be a positive integer"));
    }
    Ok(rq_rxc_exact(&table.scaled(k)?)? == rq_rxc_exact(table)?)
}

/// Draws one multinomial(n, pop) fourfold table by sequential conditional
/// binomials.
pub fn sample_table<R: Rng + ?Sized>(
    pop: &PopulationTable2x2,
    n: u64,
    rng: &mut R,
) -> Result<ContingencyTable> {
    let mut counts = [0u64; 4];
    let mut remaining_n = n;
    let mut remaining_p = 1.0;
    for (count, &prob) in counts.iter_mut().zip(&pop.probs[..3]) {
        if remaining_n == 0 {
            break;
        }
        let p = if remaining_p > 0.0 {
            (prob / remaining_p).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let draw = Binomial::new(remaining_n, p)
            .map_err(|e| NbError::validation("pop", e.to_string()))?
            .sample(rng);
        *count = draw;
        remaining_n -= draw;
        remaining_p -= prob;
    }
    counts[3] = remaining_n;
    ContingencyTable::two_by_two(counts[0], counts[1], counts[2], counts[3])
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one replicate, a pure function of `(seed, n, replicate)`.
pub fn replicate_seed(seed: u64, n: u64, replicate: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ n) ^ replicate)
}

/// Estimator statistics at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeEstimate {
    pub n: u64,
    pub mean_nb_hat: f64,
    /// `None` when a single replicate leaves the spread undefined.
    pub sd_nb_hat: Option<f64>,
    pub replicates: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub population: PopulationTable2x2,
    pub population_nb: f64,
    pub per_n_estimates: Vec<SizeEstimate>,
    pub seed: u64,
    pub rng_algorithm: String,
    pub warnings: Vec<String>,
}

fn estimate_at(
    pop: &PopulationTable2x2,
    n: u64,
    replicates: u64,
    seed: u64,
) -> Result<SizeEstimate> {
    let draws = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(replicate_seed(seed, n, i));
            let table = sample_table(pop, n, &mut rng)?;
            Ok(nb_2x2(&table)?.value())
        })
        .collect::<Result<Vec<f64>>>()?;

    let count = draws.len() as f64;
    let mean = draws.iter().sum::<f64>() / count;
    let sd = (replicates > 1).then(|| {
        let ss: f64 = draws.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (count - 1.0)).sqrt()
    });
    Ok(SizeEstimate {
        n,
        mean_nb_hat: mean,
        sd_nb_hat: sd,
        replicates,
    })
}

/// Mean and spread of the plug-in fourfold nb over `replicates`
/// multinomial samples at each size.
///
/// Replicates run in parallel; output is identical for any thread count
/// because every replicate owns a seed derived from `(seed, n, index)`.
pub fn run_estimator_sim(
    pop: &PopulationTable2x2,
    sample_sizes: &[u64],
    replicates: u64,
    seed: u64,
) -> Result<SimulationResult> {
    if sample_sizes.is_empty() {
        return Err(NbError::validation(
            "sizes",
            "at least one sample size is required",
        ));
    }
    if let Some(n) = sample_sizes.iter().find(|&&n| n < MIN_SAMPLE_SIZE) {
        return Err(NbError::validation(
            "sizes",
            format!("sample size {n} is below the minimum of {MIN_SAMPLE_SIZE}"),
        ));
    }
    if replicates == 0 {
        return Err(NbError::validation("reps", "must be at least 1"));
    }

    let mut warnings = Vec::new();
    if pop.is_degenerate() {
        warnings.push("population puts all mass on one cell; every sampled nb is 0".to_string());
    }
    if replicates == 1 {
        warnings.push("a single replicate leaves sd_nb_hat undefined".to_string());
    }

    let per_n_estimates = sample_sizes
        .iter()
        .map(|&n| estimate_at(pop, n, replicates, seed))
        .collect::<Result<Vec<_>>>()?;

    Ok(SimulationResult {
        population: *pop,
        population_nb: population_nb_2x2(pop),
        per_n_estimates,
        seed,
        rng_algorithm: RNG_ALGORITHM.to_string(),
        warnings,
    })
}
