//! Numerical check of the Markov chain switching condition.
//!
//! For a chain `A`, a reference chain `B` and a map `phi` from `A`-states to
//! `B`-states, step `t` compares
//!
//! * `lhs_t = sum_x pi_t(x) sum_x' P_A(x, x') h_B(phi(x'))` and
//! * `rhs_t = sum_y pi'_t(y) sum_y' P_B(y, y') h_B(y')`, `pi'_t(y) = pi_t(phi^-1(y))`,
//!
//! where `h_B` is the CFHT vector of `B`. With `rho_t = lhs_t - rhs_t` the
//! identity `E_A = E_B + sum_t rho_t` holds exactly, so the report doubles as
//! a self-consistency check of both solvers.

use std::f64::consts::E;

use serde::Serialize;

use super::evolve::{check_distribution, optimal_mass, step};
use super::matrix::{build_chain, TransitionMatrix};
use super::phi::{phi_indices, PhiMap};
use super::solve::{cfht_solve, dcfht};
use crate::config::{Algorithm, EaConfig};
use crate::error::{Error, Result};
use crate::exact::{ref_dcfht_leadingones, ref_dcfht_onemax, TheoremId};
use crate::operators::{CrossoverKind, MutationKind};
use crate::problem::Problem;

/// Absolute tolerance for per-step and final comparisons.
pub const COMPARE_TOL: f64 = 1e-9;

/// Direction of the switching condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `lhs_t <= rhs_t + rho_t`, giving an upper bound.
    Upper,
    /// `lhs_t >= rhs_t + rho_t`, giving a lower bound.
    Lower,
}

/// A proposed slack sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticRho {
    /// `rho_t = c * (1 - pi_t(X*))`.
    Unabsorbed(f64),
    /// Explicit values; missing trailing entries count as zero.
    Sequence(Vec<f64>),
}

impl AnalyticRho {
    pub fn at(&self, t: usize, unabsorbed: f64) -> f64 {
        match self {
            AnalyticRho::Unabsorbed(c) => c * unabsorbed,
            AnalyticRho::Sequence(v) => v.get(t).copied().unwrap_or(0.0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GmcstOptions {
    pub horizon: usize,
    pub tail_eps: f64,
    pub side: Side,
    pub analytic: Option<AnalyticRho>,
}

impl Default for GmcstOptions {
    fn default() -> Self {
        Self {
            horizon: 10_000_000,
            tail_eps: 1e-12,
            side: Side::Upper,
            analytic: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GmcstStep {
    pub t: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub rho: f64,
    /// `1 - pi_t(X*)`.
    pub unabsorbed: f64,
    pub analytic: Option<f64>,
    /// Whether the step satisfies the analytic condition on the chosen side.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GmcstReport {
    pub side: Side,
    pub steps: Vec<GmcstStep>,
    pub rho_sum: f64,
    pub rho_positive: f64,
    pub rho_negative: f64,
    pub analytic_sum: Option<f64>,
    /// Number of recorded steps.
    pub horizon: usize,
    /// Set when the horizon was hit before the mass fell below `tail_eps`.
    pub truncated: bool,
    /// Non-absorbed mass of chain `A` after the last recorded step.
    pub residual_mass: f64,
    /// Bound on `|sum of rho_t over the unrecorded steps|`.
    pub truncation_bound: f64,
    /// `E[tau | pi_0]` from the CFHT of chain `A`.
    pub e_tau: f64,
    /// `E[tau' | pi'_0]` from the CFHT of chain `B`.
    pub e_tau_ref: f64,
    /// `|e_tau - e_tau_ref - rho_sum|`.
    pub identity_error: f64,
    pub upper_holds: bool,
    pub lower_holds: bool,
    pub failed_steps: usize,
}

impl GmcstReport {
    /// True when every recorded step meets the analytic condition.
    pub fn per_step_pass(&self) -> Option<bool> {
        self.analytic_sum.map(|_| self.failed_steps == 0)
    }

    pub fn first_failure(&self) -> Option<&GmcstStep> {
        self.steps.iter().find(|s| s.holds == Some(false))
    }
}

/// Runs the switching condition of chain `a` against reference chain `b`.
pub fn gmcst_check(
    a: &TransitionMatrix,
    b: &TransitionMatrix,
    phi: PhiMap,
    pi0: &[f64],
    options: &GmcstOptions,
) -> Result<GmcstReport> {
    check_distribution(a, pi0)?;
    let map = phi_indices(phi, a.space(), b.space())?;
    let h_b = cfht_solve(b)?;
    let h_a = cfht_solve(a)?;

    let k_b: Vec<f64> = (0..b.len())
        .map(|y| {
            let (cols, vals) = b.row(y);
            cols.iter()
                .zip(vals)
                .map(|(&z, &p)| p * h_b[z as usize])
                .sum()
        })
        .collect();
    let g: Vec<f64> = (0..a.len())
        .map(|x| {
            let (cols, vals) = a.row(x);
            cols.iter()
                .zip(vals)
                .map(|(&z, &p)| p * h_b[map[z as usize]])
                .sum()
        })
        .collect();
    let k: Vec<f64> = map.iter().map(|&y| k_b[y]).collect();

    let mut pi = pi0.to_vec();
    let mut steps = Vec::new();
    let (mut rho_sum, mut rho_positive, mut rho_negative) = (0.0, 0.0, 0.0);
    let mut analytic_sum = options.analytic.as_ref().map(|_| 0.0);
    let mut failed_steps = 0;
    let mut unabsorbed = (1.0 - optimal_mass(a, &pi)).max(0.0);
    while unabsorbed >= options.tail_eps && steps.len() < options.horizon {
        let t = steps.len();
        let lhs = dcfht(&g, &pi);
        let rhs = dcfht(&k, &pi);
        let rho = lhs - rhs;
        rho_sum += rho;
        if rho > 0.0 {
            rho_positive += rho;
        } else {
            rho_negative += rho;
        }
        let analytic = options.analytic.as_ref().map(|r| r.at(t, unabsorbed));
        let holds = analytic.map(|r| match options.side {
            Side::Upper => rho <= r + COMPARE_TOL,
            Side::Lower => rho >= r - COMPARE_TOL,
        });
        if let (Some(sum), Some(r)) = (analytic_sum.as_mut(), analytic) {
            *sum += r;
        }
        if holds == Some(false) {
            failed_steps += 1;
        }
        steps.push(GmcstStep {
            t,
            lhs,
            rhs,
            rho,
            unabsorbed,
            analytic,
            holds,
        });
        pi = step(a, &pi);
        unabsorbed = (1.0 - optimal_mass(a, &pi)).max(0.0);
    }

    let max_h = h_a.iter().chain(&h_b).copied().fold(0.0, f64::max);
    let truncation_bound = unabsorbed * max_h;
    let e_tau = dcfht(&h_a, pi0);
    let mut pi_ref = vec![0.0; b.len()];
    for (x, &p) in pi0.iter().enumerate() {
        pi_ref[map[x]] += p;
    }
    let e_tau_ref = dcfht(&h_b, &pi_ref);
    let slack = truncation_bound + COMPARE_TOL;
    Ok(GmcstReport {
        side: options.side,
        horizon: steps.len(),
        truncated: unabsorbed >= options.tail_eps,
        steps,
        rho_sum,
        rho_positive,
        rho_negative,
        analytic_sum,
        residual_mass: unabsorbed,
        truncation_bound,
        e_tau,
        e_tau_ref,
        identity_error: (e_tau - e_tau_ref - rho_sum).abs(),
        upper_holds: e_tau <= e_tau_ref + rho_positive + slack,
        lower_holds: e_tau >= e_tau_ref + rho_negative - slack,
        failed_steps,
    })
}

/// A bound-theorem setting: a (2+2)-EA chain, its reference chain and the
/// per-step slack used in the proof.
#[derive(Clone, Debug)]
pub struct GmcstInstance {
    pub theorem: TheoremId,
    pub n: usize,
    pub pc: f64,
    pub chain: TransitionMatrix,
    pub reference: TransitionMatrix,
    pub phi: PhiMap,
    pub side: Side,
    /// `c` in `rho_t = c * (1 - pi_t(X*))`.
    pub coefficient: f64,
}

/// Outcome of [`GmcstInstance::run`].
#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub pc: f64,
    pub report: GmcstReport,
    /// Closed-form DCFHT of the reference chain.
    pub ref_closed_form: f64,
    /// Bound on `E[tau]` implied by the slack: `E[tau'] / (1 - c)`.
    pub implied_bound: f64,
    pub final_holds: bool,
    pub ref_matches: bool,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.report.per_step_pass() == Some(true)
            && self.final_holds
            && self.ref_matches
            && !self.report.truncated
    }
}

/// Crossover analyzed by default in each bound theorem.
pub fn default_crossover(theorem: TheoremId) -> Result<CrossoverKind> {
    match theorem {
        TheoremId::T2 | TheoremId::T3 | TheoremId::T5 => Ok(CrossoverKind::OnePoint),
        TheoremId::T4 | TheoremId::T6 => Ok(CrossoverKind::Uniform),
        other => Err(Error::InvalidArgument(format!(
            "{other} is not proved with the switching theorem"
        ))),
    }
}

/// Builds the instance of `theorem` with the given operators.
pub fn theorem_instance(
    theorem: TheoremId,
    n: usize,
    pc: f64,
    crossover: CrossoverKind,
    mutation: MutationKind,
) -> Result<GmcstInstance> {
    let allowed: &[CrossoverKind] = match theorem {
        TheoremId::T2 | TheoremId::T5 => &[CrossoverKind::OnePoint, CrossoverKind::Uniform],
        TheoremId::T3 => &[CrossoverKind::OnePoint],
        TheoremId::T4 | TheoremId::T6 => &[CrossoverKind::Uniform],
        _ => &[],
    };
    if !allowed.contains(&crossover) {
        return Err(Error::InvalidArgument(format!(
            "{theorem} does not cover {} crossover",
            crossover.name()
        )));
    }
    let problem = match theorem {
        TheoremId::T5 | TheoremId::T6 => Problem::OneMax,
        _ => Problem::LeadingOnes,
    };
    let (side, coefficient) = match theorem {
        TheoremId::T2 | TheoremId::T5 => (Side::Upper, 1.0 - (1.0 - pc) / E),
        TheoremId::T3 => (Side::Lower, 2.0 * pc - 4.0),
        _ => (Side::Lower, 2.0 - 2.0 * n as f64),
    };
    let (phi, reference) = if theorem == TheoremId::T5 {
        (
            PhiMap::OneMaxArgmax,
            EaConfig::new(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit),
        )
    } else {
        (
            PhiMap::LeadingOnesPrefix,
            EaConfig::new(
                Algorithm::OnePlusOneStrict,
                Problem::LeadingOnes,
                MutationKind::OneBit,
            ),
        )
    };
    let config =
        EaConfig::new(Algorithm::TwoPlusTwo, problem, mutation).with_crossover(crossover, pc);
    Ok(GmcstInstance {
        theorem,
        n,
        pc,
        chain: build_chain(&config, n)?,
        reference: build_chain(&reference, n)?,
        phi,
        side,
        coefficient,
    })
}

impl GmcstInstance {
    pub fn run(&self, horizon: usize, tail_eps: f64) -> Result<InstanceReport> {
        let options = GmcstOptions {
            horizon,
            tail_eps,
            side: self.side,
            analytic: Some(AnalyticRho::Unabsorbed(self.coefficient)),
        };
        let pi0 = self.chain.space().uniform();
        let report = gmcst_check(&self.chain, &self.reference, self.phi, &pi0, &options)?;
        let ref_closed_form = if self.phi == PhiMap::OneMaxArgmax {
            ref_dcfht_onemax(self.n)
        } else {
            ref_dcfht_leadingones(self.n)
        };
        let implied_bound = report.e_tau_ref / (1.0 - self.coefficient);
        let final_holds = match self.side {
            Side::Upper => report.e_tau <= implied_bound + COMPARE_TOL,
            Side::Lower => report.e_tau >= implied_bound - COMPARE_TOL,
        };
        let ref_matches = (report.e_tau_ref - ref_closed_form).abs() <= COMPARE_TOL;
        Ok(InstanceReport {
            theorem: self.theorem,
            n: self.n,
            pc: self.pc,
            report,
            ref_closed_form,
            implied_bound,
            final_holds,
            ref_matches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::theorem_bound;

    #[test]
    fn identical_chains_have_zero_rho() {
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::OneMax,
            MutationKind::OneBit,
        )
        .with_crossover(CrossoverKind::OneBit, 0.3);
        let m = build_chain(&c, 3).unwrap();
        let r = gmcst_check(
            &m,
            &m,
            PhiMap::Identity,
            &m.space().uniform(),
            &GmcstOptions::default(),
        )
        .unwrap();
        assert!(r.steps.iter().all(|s| s.rho.abs() < 1e-12));
        assert!((r.e_tau - r.e_tau_ref).abs() < 1e-12);
        assert!(!r.truncated && r.residual_mass < 1e-12);
    }

    #[test]
    fn identity_holds_across_different_chains() {
        let inst = theorem_instance(
            TheoremId::T2,
            3,
            0.5,
            CrossoverKind::OnePoint,
            MutationKind::OneBit,
        )
        .unwrap();
        let r = inst.run(10_000_000, 1e-12).unwrap();
        assert!(r.report.identity_error <= r.report.truncation_bound + 1e-9);
        assert!(r.report.upper_holds && r.report.lower_holds);
    }

    #[test]
    fn theorem_two_instance() {
        let inst = theorem_instance(
            TheoremId::T2,
            3,
            0.5,
            CrossoverKind::OnePoint,
            MutationKind::OneBit,
        )
        .unwrap();
        let r = inst.run(10_000_000, 1e-12).unwrap();
        assert_eq!(r.report.per_step_pass(), Some(true));
        assert!(r.final_holds && r.ref_matches);
        let b = theorem_bound(TheoremId::T2, 3, 0.5).unwrap();
        assert!((r.implied_bound - b.upper.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn theorem_four_instance() {
        let inst = theorem_instance(
            TheoremId::T4,
            3,
            0.5,
            CrossoverKind::Uniform,
            MutationKind::OneBit,
        )
        .unwrap();
        let r = inst.run(10_000_000, 1e-12).unwrap();
        assert_eq!(r.report.per_step_pass(), Some(true));
        assert!(r.final_holds && r.ref_matches);
    }

    #[test]
    fn rejects_unproved_settings() {
        assert!(theorem_instance(
            TheoremId::T3,
            3,
            0.5,
            CrossoverKind::Uniform,
            MutationKind::OneBit
        )
        .is_err());
        assert!(default_crossover(TheoremId::T7Gap).is_err());
    }
}
