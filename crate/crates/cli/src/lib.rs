//! `ea-lab`: runtime experiments, figure data and verification suites for
//! two-individual evolutionary algorithms.

pub mod commands;
pub mod failure;
pub mod opts;
pub mod output;
pub mod record;
pub mod svg;
