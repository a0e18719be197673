use rayon::prelude::*;
use serde::Serialize;

use crate::config::EaConfig;
use crate::ea::{run_trial, TrialResult};
use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Environment variable that sets the worker count.
pub const THREADS_ENV: &str = "EA_LAB_THREADS";

/// Sample mean of hitting times over independent runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfhtEstimate {
    pub fingerprint: String,
    pub n: usize,
    pub mean: f64,
    /// `s / sqrt(runs)` with the unbiased sample deviation `s`; 0 for one run.
    pub stderr: f64,
    pub runs: u64,
    /// Runs stopped at the cutoff. They count as `cutoff` steps.
    pub censored: u64,
    pub cutoff: u64,
    pub master_seed: u64,
}

impl EfhtEstimate {
    pub fn is_censored(&self) -> bool {
        self.censored > 0
    }

    /// One run gives no spread information.
    pub fn is_degenerate(&self) -> bool {
        self.runs < 2
    }
}

/// `1000 n^2`.
pub fn default_cutoff(n: usize) -> u64 {
    1000 * (n as u64) * (n as u64)
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Runs trial `i` with seed `derive_seed(master_seed, i)` for `i < runs`,
/// results in index order.
pub fn collect_trials(
    config: &EaConfig,
    n: usize,
    runs: u64,
    master_seed: u64,
    cutoff: u64,
) -> Result<Vec<TrialResult>> {
    config.validate(n)?;
    (0..runs)
        .into_par_iter()
        .map(|i| run_trial(config, n, derive_seed(master_seed, i), cutoff))
        .collect()
}

/// Estimates the EFHT of `config` from `runs` independent trials.
/// `cutoff` defaults to [`default_cutoff`]. Uses [`THREADS_ENV`] workers when set.
pub fn estimate_efht(
    config: &EaConfig,
    n: usize,
    runs: u64,
    master_seed: u64,
    cutoff: Option<u64>,
) -> Result<EfhtEstimate> {
    match threads_from_env() {
        Some(t) => estimate_efht_with_threads(config, n, runs, master_seed, cutoff, t),
        None => estimate_inner(config, n, runs, master_seed, cutoff),
    }
}

/// As [`estimate_efht`] on a dedicated pool of `threads` workers.
pub fn estimate_efht_with_threads(
    config: &EaConfig,
    n: usize,
    runs: u64,
    master_seed: u64,
    cutoff: Option<u64>,
    threads: usize,
) -> Result<EfhtEstimate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| estimate_inner(config, n, runs, master_seed, cutoff))
}

fn estimate_inner(
    config: &EaConfig,
    n: usize,
    runs: u64,
    master_seed: u64,
    cutoff: Option<u64>,
) -> Result<EfhtEstimate> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(n));
    let trials = collect_trials(config, n, runs, master_seed, cutoff)?;
    let (mean, stderr) = mean_and_stderr(trials.iter().map(|t| t.steps as f64));
    Ok(EfhtEstimate {
        fingerprint: config.fingerprint(),
        n,
        mean,
        stderr,
        runs,
        censored: trials.iter().filter(|t| t.censored).count() as u64,
        cutoff,
        master_seed,
    })
}

/// Mean and standard error of the mean, summed in iteration order.
pub fn mean_and_stderr(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let (count, sum) = values.clone().fold((0u64, 0.0), |(c, s), v| (c + 1, s + v));
    if count == 0 {
        return (0.0, 0.0);
    }
    let mean = sum / count as f64;
    if count == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    let var = ss / (count - 1) as f64;
    (mean, (var / count as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Algorithm;
    use crate::ea::EaState;
    use crate::operators::{CrossoverKind, MutationKind};
    use crate::problem::Problem;
    use crate::rng::rng_from_seed;

    fn opo_onemax() -> EaConfig {
        EaConfig::new(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit)
    }

    #[test]
    fn single_bit_onemax() {
        let e = estimate_efht(&opo_onemax(), 1, 100_000, 3, None).unwrap();
        assert!((e.mean - 0.5).abs() <= 4.0 * e.stderr, "{e:?}");
        assert_eq!(e.censored, 0);
        assert_eq!(e.cutoff, 1000);
    }

    #[test]
    fn optimal_start_gives_zero() {
        // find a master seed whose first trial starts at the optimum
        let master = (0..)
            .find(|&m| {
                let mut rng = rng_from_seed(derive_seed(m, 0));
                EaState::random(1, 1, &mut rng).is_optimal()
            })
            .unwrap();
        let e = estimate_efht(&opo_onemax(), 1, 1, master, None).unwrap();
        assert_eq!((e.mean, e.stderr, e.runs), (0.0, 0.0, 1));
        assert!(e.is_degenerate());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        )
        .with_crossover(CrossoverKind::OneBit, 0.5);
        let a = estimate_efht_with_threads(&c, 12, 3000, 11, None, 1).unwrap();
        for t in [2, 8] {
            let b = estimate_efht_with_threads(&c, 12, 3000, 11, None, t).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        }
    }

    #[test]
    fn censoring_is_counted() {
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        )
        .with_crossover(CrossoverKind::OneBit, 1.0);
        let e = estimate_efht(&c, 6, 200, 1, Some(50)).unwrap();
        assert!(e.is_censored());
        assert!(e.censored <= e.runs && e.mean <= 50.0);
    }

    #[test]
    fn errors() {
        assert!(estimate_efht(&opo_onemax(), 3, 0, 1, None).is_err());
        let bad = opo_onemax().with_crossover(CrossoverKind::OneBit, 0.5);
        assert!(matches!(
            estimate_efht(&bad, 3, 10, 1, None),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn stderr_formula() {
        let (m, s) = mean_and_stderr([1.0, 2.0, 3.0, 4.0].into_iter());
        assert_eq!(m, 2.5);
        // sample variance 5/3
        assert!((s - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_and_stderr([7.0].into_iter()), (7.0, 0.0));
    }
}
