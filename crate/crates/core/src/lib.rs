//! Runtime analysis of the (1+1)-, (2:2)- and (2+2)-EA with and without
//! crossover on LeadingOnes and OneMax.
//!
//! * [`ea`] runs the algorithms.
//! * [`exact`] holds closed forms, recurrence tables and bound formulas.
//! * [`chain`] builds the exact Markov chains for small `n` and computes
//!   hitting times, distributions and switching-theorem checks on them.
//! * [`montecarlo`] estimates expected hitting times by simulation.

pub mod bitstring;
pub mod chain;
pub mod config;
pub mod ea;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod operators;
pub mod problem;
pub mod rng;
pub mod strategy;

pub use bitstring::BitString;
pub use config::{Algorithm, EaConfig, Reproduction, TiePolicy};
pub use ea::{ea_step, run_trial, run_trial_from, EaState, Offspring, Population, TrialResult};
pub use error::{Error, Result};
pub use operators::{CrossoverKind, MutationKind};
pub use problem::Problem;
pub use strategy::{Action, Strategy};
