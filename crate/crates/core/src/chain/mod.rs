//! Exact Markov chains of the EAs for small `n`.

mod audit;
mod evolve;
mod export;
mod gmcst;
mod matrix;
mod observables;
mod phi;
mod solve;
mod space;

pub use audit::{
    audit_config, transition_audit, uniformity_check, Discrepancy, DiscrepancyKind, MAX_AUDIT_N,
};
pub use evolve::{check_distribution, evolve, optimal_mass, step, trajectory};
pub use export::{read_triplets, write_triplets, Triplets};
pub use gmcst::{
    default_crossover, gmcst_check, theorem_instance, AnalyticRho, GmcstInstance, GmcstOptions,
    GmcstReport, GmcstStep, InstanceReport, Side,
};
pub use matrix::{
    build_chain, build_chain_with_cap, TransitionMatrix, MAX_N_EXPONENTIAL_OPERATORS,
};
pub use observables::{equal_lo_mass, n01_fraction, position_marginals};
pub use phi::{phi_indices, phi_map, PhiMap};
pub use solve::{cfht_solve, check_absorbing, dcfht, efht_uniform, residual, RESIDUAL_TOL};
pub use space::{enumerate_population_space, StateSpace, DEFAULT_STATE_CAP};
