use anyhow::Result;
use clap::Args;
use ea_lab::montecarlo::{sweep, ComparisonRecord, SweepSpec};
use ea_lab::Strategy;

use crate::failure::Failure;
use crate::opts::{EaArgs, NGrid, OutputArgs, PcGrid, SampleArgs};
use crate::output::emit;
use crate::record::ExperimentRecord;

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Supplies algorithm, problem, operators and tie policy; --pc and --strategy are ignored.
    #[command(flatten)]
    pub ea: EaArgs,
    /// Sizes, e.g. 10:100:10.
    #[arg(long = "n")]
    pub ns: NGrid,
    /// Crossover probabilities, e.g. 0,0.1,0.5,0.9.
    #[arg(long = "pcs", default_value = "0,0.1,0.5,0.9")]
    pub pcs: PcGrid,
    /// Strategies to add to the grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub strategies: Vec<Strategy>,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn to_record(experiment: &str, r: &ComparisonRecord, seed: u64) -> ExperimentRecord {
    let mut rec = ExperimentRecord::estimate(experiment, &r.config, &r.estimate, seed);
    rec.gap = r.gap.map(|g| g.0);
    rec.gap_stderr = r.gap.map(|g| g.1);
    rec.ratio = r.ratio.map(|g| g.0);
    rec.ratio_stderr = r.ratio.map(|g| g.1);
    rec
}

/// Fails with [`Failure::Censored`] in strict mode, otherwise warns.
pub fn check_censoring(records: &[ComparisonRecord], strict: bool) -> Result<()> {
    let bad: Vec<String> = records
        .iter()
        .filter(|r| r.estimate.is_censored())
        .map(|r| {
            format!(
                "{} n={} ({} runs)",
                r.estimate.fingerprint, r.n, r.estimate.censored
            )
        })
        .collect();
    if bad.is_empty() {
        return Ok(());
    }
    let msg = bad.join(", ");
    if strict {
        return Err(Failure::Censored(msg).into());
    }
    eprintln!("warning: runs reached the cutoff at {msg}");
    Ok(())
}

pub fn run(args: &SweepArgs) -> Result<()> {
    let mut base = args.ea.config()?;
    if let Some(kind) = args.ea.crossover {
        base = base.with_crossover(kind, 0.5);
    }
    let seed = args.sample.seed();
    let spec = SweepSpec {
        base,
        ns: args.ns.0.clone(),
        pcs: args.pcs.0.clone(),
        strategies: args.strategies.clone(),
        runs: args.sample.runs,
        master_seed: seed,
        cutoff: args.sample.cutoff,
    };
    let results = sweep(&spec)?;
    check_censoring(&results, args.sample.strict)?;
    let records: Vec<ExperimentRecord> = results
        .iter()
        .map(|r| to_record("sweep", r, seed))
        .collect();
    emit(&records, &args.out)
}
