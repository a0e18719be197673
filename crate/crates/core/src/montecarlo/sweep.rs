use serde::Serialize;

use super::estimate::{estimate_efht, EfhtEstimate};
use super::stats::{gap_with_stderr, ratio_with_stderr};
use crate::config::{EaConfig, Reproduction};
use crate::error::{Error, Result};
use crate::operators::CrossoverKind;
use crate::rng::{hash_label, mix64};
use crate::strategy::Strategy;

/// One axis value of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum GridPoint {
    Pc(f64),
    Strategy(Strategy),
}

impl GridPoint {
    /// `0.5` for crossover probabilities, the strategy name otherwise.
    pub fn label(&self) -> String {
        match self {
            GridPoint::Pc(pc) => pc.to_string(),
            GridPoint::Strategy(s) => s.name().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRecord {
    pub n: usize,
    pub point: GridPoint,
    pub config: EaConfig,
    pub estimate: EfhtEstimate,
    /// Gap statistic against the `p_c = 0` point at the same `n`, with stderr.
    pub gap: Option<(f64, f64)>,
    /// Ratio statistic against the same baseline, with stderr.
    pub ratio: Option<(f64, f64)>,
}

/// A grid of estimates.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Supplies algorithm, problem, mutation, tie policy and crossover kind.
    pub base: EaConfig,
    pub ns: Vec<usize>,
    pub pcs: Vec<f64>,
    pub strategies: Vec<Strategy>,
    pub runs: u64,
    pub master_seed: u64,
    /// `None` uses the default per-`n` cutoff.
    pub cutoff: Option<u64>,
}

/// Master seed of one grid point, independent of the rest of the grid.
pub fn point_seed(master: u64, config: &EaConfig, n: usize) -> u64 {
    mix64(master ^ hash_label(&format!("{}#{n}", config.fingerprint())))
}

fn crossover_kind(base: &EaConfig) -> Option<CrossoverKind> {
    match base.reproduction {
        Reproduction::Crossover { kind, .. } => Some(kind),
        _ => None,
    }
}

/// The configuration at one grid point. `p_c = 0` is the mutation-only EA.
pub fn point_config(base: &EaConfig, point: GridPoint) -> Result<EaConfig> {
    let mut c = *base;
    match point {
        GridPoint::Pc(0.0) => c.reproduction = Reproduction::MutationOnly,
        GridPoint::Pc(pc) => {
            let kind = crossover_kind(base).ok_or_else(|| {
                Error::InvalidConfig("a p_c grid needs a crossover operator".into())
            })?;
            c = c.with_crossover(kind, pc);
        }
        GridPoint::Strategy(s) => c = c.with_strategy(s),
    }
    Ok(c)
}

/// Estimates every grid point and derives gap and ratio statistics.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<ComparisonRecord>> {
    if spec.ns.is_empty() || (spec.pcs.is_empty() && spec.strategies.is_empty()) {
        return Err(Error::InvalidArgument("sweep grid is empty".into()));
    }
    let points: Vec<GridPoint> = spec
        .pcs
        .iter()
        .map(|&p| GridPoint::Pc(p))
        .chain(spec.strategies.iter().map(|&s| GridPoint::Strategy(s)))
        .collect();
    let mut out = Vec::new();
    for &n in &spec.ns {
        let first = out.len();
        for &point in &points {
            let config = point_config(&spec.base, point)?;
            let seed = point_seed(spec.master_seed, &config, n);
            let estimate = estimate_efht(&config, n, spec.runs, seed, spec.cutoff)?;
            out.push(ComparisonRecord {
                n,
                point,
                config,
                estimate,
                gap: None,
                ratio: None,
            });
        }
        let baseline = out[first..]
            .iter()
            .find(|r| r.point == GridPoint::Pc(0.0))
            .map(|r| r.estimate.clone());
        if let Some(base) = baseline {
            for r in &mut out[first..] {
                match r.point {
                    GridPoint::Pc(pc) if pc > 0.0 && pc < 1.0 => {
                        r.gap = gap_with_stderr(&r.estimate, &base, pc).ok();
                        r.ratio = ratio_with_stderr(&r.estimate, &base, pc).ok();
                    }
                    GridPoint::Strategy(_) => {
                        r.ratio = ratio_with_stderr(&r.estimate, &base, 0.0).ok();
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(out)
}
