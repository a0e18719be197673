use std::io::{Read, Write};

use anyhow::Result;
use ea_lab::montecarlo::EfhtEstimate;
use ea_lab::{EaConfig, Reproduction};
use serde::{Deserialize, Serialize};

/// Fixed leading columns of every CSV.
pub const HEADER: [&str; 10] = [
    "experiment",
    "problem",
    "algo",
    "n",
    "pc_or_strategy",
    "value",
    "stderr",
    "runs",
    "censored",
    "seed",
];

/// Columns after [`HEADER`]; `timestamp` is last and optional.
pub const EXTRA: [&str; 7] = [
    "fingerprint",
    "gap",
    "gap_stderr",
    "ratio",
    "ratio_stderr",
    "lower_bound",
    "upper_bound",
];

/// One output row. Exact values have no stderr, runs or seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub problem: String,
    pub algo: String,
    pub n: usize,
    pub pc_or_strategy: String,
    pub value: f64,
    pub stderr: Option<f64>,
    pub runs: Option<u64>,
    pub censored: u64,
    pub seed: Option<u64>,
    pub fingerprint: String,
    pub gap: Option<f64>,
    pub gap_stderr: Option<f64>,
    pub ratio: Option<f64>,
    pub ratio_stderr: Option<f64>,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    #[serde(default)]
    pub timestamp: Option<u64>,
}

/// `0.5`, `0` for mutation only, or the strategy name.
pub fn point_label(config: &EaConfig) -> String {
    match config.reproduction {
        Reproduction::MutationOnly => "0".into(),
        Reproduction::Crossover { pc, .. } => pc.to_string(),
        Reproduction::Strategy(s) => s.name().into(),
    }
}

impl ExperimentRecord {
    fn base(experiment: &str, config: &EaConfig, n: usize, value: f64) -> Self {
        ExperimentRecord {
            experiment: experiment.into(),
            problem: config.problem.to_string(),
            algo: config.algorithm.to_string(),
            n,
            pc_or_strategy: point_label(config),
            value,
            stderr: None,
            runs: None,
            censored: 0,
            seed: None,
            fingerprint: config.fingerprint(),
            gap: None,
            gap_stderr: None,
            ratio: None,
            ratio_stderr: None,
            lower_bound: None,
            upper_bound: None,
            timestamp: None,
        }
    }

    pub fn exact(experiment: &str, config: &EaConfig, n: usize, value: f64) -> Self {
        Self::base(experiment, config, n, value)
    }

    /// Record of an estimate; `seed` is the user-facing master seed.
    pub fn estimate(experiment: &str, config: &EaConfig, e: &EfhtEstimate, seed: u64) -> Self {
        ExperimentRecord {
            stderr: Some(e.stderr),
            runs: Some(e.runs),
            censored: e.censored,
            seed: Some(seed),
            ..Self::base(experiment, config, e.n, e.mean)
        }
    }

    fn fields(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.experiment.clone(),
            self.problem.clone(),
            self.algo.clone(),
            self.n.to_string(),
            self.pc_or_strategy.clone(),
            self.value.to_string(),
            opt(&self.stderr),
            opt(&self.runs),
            self.censored.to_string(),
            opt(&self.seed),
            self.fingerprint.clone(),
            opt(&self.gap),
            opt(&self.gap_stderr),
            opt(&self.ratio),
            opt(&self.ratio_stderr),
            opt(&self.lower_bound),
            opt(&self.upper_bound),
        ]
    }
}

/// Writes the header and `records`; the timestamp column only when
/// `timestamp` is given, the same value on every row.
pub fn write_csv<W: Write>(
    out: W,
    records: &[ExperimentRecord],
    timestamp: Option<u64>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = HEADER.iter().chain(EXTRA.iter()).copied().collect();
    if timestamp.is_some() {
        header.push("timestamp");
    }
    w.write_record(&header)?;
    for r in records {
        let mut row = r.fields();
        if let Some(ts) = timestamp {
            row.push(ts.to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

pub fn to_json(records: &[ExperimentRecord], timestamp: Option<u64>) -> Result<String> {
    let stamped: Vec<ExperimentRecord> = records
        .iter()
        .cloned()
        .map(|r| ExperimentRecord { timestamp, ..r })
        .collect();
    Ok(serde_json::to_string_pretty(&stamped)? + "\n")
}
