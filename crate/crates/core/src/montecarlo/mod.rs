//! Simulation estimates of expected hitting times and the crossover
//! comparison statistics.
//!
//! Trial `i` always uses seed `derive_seed(master, i)` and results are reduced
//! in index order, so estimates do not depend on the number of workers.

mod estimate;
mod stats;
mod sweep;

pub use estimate::{
    collect_trials, default_cutoff, estimate_efht, estimate_efht_with_threads, mean_and_stderr,
    threads_from_env, EfhtEstimate, THREADS_ENV,
};
pub use stats::{gap_statistic, gap_with_stderr, ratio_statistic, ratio_with_stderr};
pub use sweep::{point_config, point_seed, sweep, ComparisonRecord, GridPoint, SweepSpec};
