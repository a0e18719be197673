use anyhow::Result;
use clap::Args;
use ea_lab::chain::{build_chain, efht_uniform};
use ea_lab::exact::{theorem_bound, TheoremId};
use ea_lab::montecarlo::estimate_efht;
use ea_lab::{Algorithm, CrossoverKind, EaConfig, Problem, Reproduction};

use crate::failure::Failure;
use crate::opts::{EaArgs, OutputArgs, SampleArgs};
use crate::output::emit;
use crate::record::ExperimentRecord;

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub ea: EaArgs,
    /// Problem size.
    #[arg(long)]
    pub n: usize,
    /// Solve the exact chain instead of sampling.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// `(lower, upper)` runtime bounds that apply to `config` at `n`.
pub fn theorem_bounds(config: &EaConfig, n: usize) -> (Option<f64>, Option<f64>) {
    if config.algorithm != Algorithm::TwoPlusTwo {
        return (None, None);
    }
    let (kind, pc) = match config.reproduction {
        Reproduction::MutationOnly => (None, 0.0),
        Reproduction::Crossover { kind, pc } => (Some(kind), pc),
        Reproduction::Strategy(_) => return (None, None),
    };
    let (upper, lower) = match (config.problem, kind) {
        (_, Some(k))
            if pc > 0.0 && !matches!(k, CrossoverKind::OnePoint | CrossoverKind::Uniform) =>
        {
            return (None, None)
        }
        (Problem::LeadingOnes, Some(CrossoverKind::OnePoint)) => {
            (TheoremId::T2, Some(TheoremId::T3))
        }
        (Problem::LeadingOnes, Some(CrossoverKind::Uniform)) => {
            (TheoremId::T2, Some(TheoremId::T4))
        }
        (Problem::LeadingOnes, _) => (TheoremId::T2, None),
        (Problem::OneMax, Some(CrossoverKind::Uniform)) => (TheoremId::T5, Some(TheoremId::T6)),
        (Problem::OneMax, _) => (TheoremId::T5, None),
    };
    let up = theorem_bound(upper, n, pc).ok().and_then(|b| b.upper);
    let lo = lower
        .and_then(|t| theorem_bound(t, n, pc).ok())
        .and_then(|b| b.lower);
    (lo, up)
}

pub fn run(args: &RunArgs) -> Result<()> {
    let config = args.ea.config()?;
    let mut record = if args.exact {
        let chain = build_chain(&config, args.n)?;
        ExperimentRecord::exact("run-exact", &config, args.n, efht_uniform(&chain)?)
    } else {
        let seed = args.sample.seed();
        let est = estimate_efht(&config, args.n, args.sample.runs, seed, args.sample.cutoff)?;
        if est.is_censored() {
            let msg = format!(
                "{} of {} runs reached the cutoff {}",
                est.censored, est.runs, est.cutoff
            );
            if args.sample.strict {
                return Err(Failure::Censored(msg).into());
            }
            eprintln!("warning: {msg}; the mean is a lower bound");
        }
        ExperimentRecord::estimate("run", &config, &est, seed)
    };
    (record.lower_bound, record.upper_bound) = theorem_bounds(&config, args.n);
    emit(&[record], &args.out)
}
