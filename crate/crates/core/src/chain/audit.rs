//! Comparison of built (2:2)-EA chains against the closed-form transition
//! laws for one-bit mutation and one-bit crossover.

use std::collections::BTreeMap;

use serde::Serialize;

use super::evolve::trajectory;
use super::matrix::{build_chain, TransitionMatrix};
use super::space::StateSpace;
use crate::bitstring::BitString;
use crate::config::{Algorithm, EaConfig, Reproduction, TiePolicy};
use crate::ea::EaState;
use crate::error::{Error, Result};
use crate::operators::{CrossoverKind, MutationKind};
use crate::problem::Problem;

/// Largest `n` the audit accepts.
pub const MAX_AUDIT_N: usize = 6;
/// Tolerance on individual probabilities.
pub const ROW_TOL: f64 = 1e-12;
/// Tolerance on conditional probabilities in the uniformity check.
pub const UNIFORMITY_TOL: f64 = 1e-9;
/// Steps checked by the uniformity check.
pub const UNIFORMITY_STEPS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum DiscrepancyKind {
    /// Probability of moving to one specific state.
    Entry { to: usize },
    /// Total probability of a class of successor states.
    Class(&'static str),
    /// Conditional probability of `state` given the leading-ones pair at step `t`.
    Uniformity { t: usize, lo1: usize, lo2: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub state: usize,
    pub kind: DiscrepancyKind,
    pub expected: f64,
    pub actual: f64,
}

fn check_config(config: &EaConfig, n: usize) -> Result<f64> {
    let pc = match config.reproduction {
        Reproduction::MutationOnly => 0.0,
        Reproduction::Crossover {
            kind: CrossoverKind::OneBit,
            pc,
        } => pc,
        _ => {
            return Err(Error::InvalidConfig(
                "the audit covers mutation only or one-bit crossover".into(),
            ))
        }
    };
    if config.algorithm != Algorithm::TwoColonTwo
        || config.mutation != MutationKind::OneBit
        || config.tie_policy != TiePolicy::KeepParent
    {
        return Err(Error::InvalidConfig(
            "the audit covers the (2:2)-EA with one-bit mutation keeping parents on ties".into(),
        ));
    }
    if !(2..=MAX_AUDIT_N).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "audit needs 2 <= n <= {MAX_AUDIT_N}"
        )));
    }
    Ok(pc)
}

/// The (2:2)-EA configuration the audit expects.
pub fn audit_config(problem: Problem, pc: f64) -> EaConfig {
    let base = EaConfig::new(Algorithm::TwoColonTwo, problem, MutationKind::OneBit);
    if pc == 0.0 {
        base
    } else {
        base.with_crossover(CrossoverKind::OneBit, pc)
    }
}

/// Row-by-row comparison of `build_chain(config, n)` with the closed-form
/// laws, plus the conditional-uniformity check on LeadingOnes.
pub fn transition_audit(config: &EaConfig, n: usize) -> Result<Vec<Discrepancy>> {
    let pc = check_config(config, n)?;
    let chain = build_chain(config, n)?;
    let mut out = Vec::new();
    for x in 0..chain.len() {
        if chain.space().is_optimal(x) {
            continue;
        }
        match config.problem {
            Problem::LeadingOnes => audit_leadingones_row(&chain, x, pc, &mut out),
            Problem::OneMax => audit_onemax_row(&chain, x, pc, &mut out),
        }
    }
    if config.problem == Problem::LeadingOnes {
        out.extend(uniformity_check(&chain, UNIFORMITY_STEPS)?);
    }
    Ok(out)
}

fn members(space: &StateSpace, x: usize) -> (BitString, BitString) {
    match space.state(x) {
        EaState::Pair(p) => (p.s1, p.s2),
        EaState::Single(_) => unreachable!("audit runs on pair chains"),
    }
}

fn index(space: &StateSpace, a: &BitString, b: &BitString) -> usize {
    space.index_of(&EaState::pair(a.clone(), b.clone()).expect("equal lengths"))
}

fn with_first_zero_set(s: &BitString) -> BitString {
    let mut t = s.clone();
    t.set(s.leading_ones() + 1, true);
    t
}

fn compare_entries(
    chain: &TransitionMatrix,
    x: usize,
    expected: &BTreeMap<usize, f64>,
    out: &mut Vec<Discrepancy>,
) {
    let (cols, vals) = chain.row(x);
    let mut actual: BTreeMap<usize, f64> = cols
        .iter()
        .map(|&c| c as usize)
        .zip(vals.iter().copied())
        .collect();
    for (&to, &e) in expected {
        let a = actual.remove(&to).unwrap_or(0.0);
        if (a - e).abs() > ROW_TOL {
            out.push(Discrepancy {
                state: x,
                kind: DiscrepancyKind::Entry { to },
                expected: e,
                actual: a,
            });
        }
    }
    for (to, a) in actual {
        if a.abs() > ROW_TOL {
            out.push(Discrepancy {
                state: x,
                kind: DiscrepancyKind::Entry { to },
                expected: 0.0,
                actual: a,
            });
        }
    }
}

fn audit_leadingones_row(chain: &TransitionMatrix, x: usize, pc: f64, out: &mut Vec<Discrepancy>) {
    let space = chain.space();
    let n = space.n();
    let nf = n as f64;
    let q = 1.0 - pc;
    let (s1, s2) = members(space, x);
    let (p1, p2) = (with_first_zero_set(&s1), with_first_zero_set(&s2));
    let first = index(space, &p1, &s2);
    let second = index(space, &s1, &p2);
    let both = index(space, &p1, &p2);
    let mut e = BTreeMap::new();
    let mut add = |to: usize, p: f64| *e.entry(to).or_insert(0.0) += p;
    add(first, q * (nf - 1.0) / (nf * nf));
    add(second, q * (nf - 1.0) / (nf * nf));
    add(both, q / (nf * nf));
    add(x, q * (nf - 1.0).powi(2) / (nf * nf));
    let (lo1, lo2) = (s1.leading_ones(), s2.leading_ones());
    if lo1 == lo2 {
        add(x, pc);
    } else {
        let (lower_first, hi) = if lo1 < lo2 { (true, lo2) } else { (false, lo1) };
        let low = if lower_first { &s1 } else { &s2 };
        let (to_low, to_high) = if lower_first {
            (first, second)
        } else {
            (second, first)
        };
        add(to_low, pc / nf);
        if low.get(hi + 1) {
            add(to_high, pc / nf);
            add(x, pc * (nf - 2.0) / nf);
        } else {
            add(x, pc * (nf - 1.0) / nf);
        }
    }
    e.retain(|_, p| *p != 0.0);
    compare_entries(chain, x, &e, out);
}

fn audit_onemax_row(chain: &TransitionMatrix, x: usize, pc: f64, out: &mut Vec<Discrepancy>) {
    let space = chain.space();
    let n = space.n();
    let nf = n as f64;
    let q = 1.0 - pc;
    let (s1, s2) = members(space, x);
    let i = s1.count_zeros() as f64;
    let j = s2.count_zeros() as f64;
    let k = (1..=n).filter(|&p| !s1.get(p) && s2.get(p)).count() as f64;

    let improve = |s: &BitString| -> Vec<BitString> {
        (1..=n)
            .filter(|&p| !s.get(p))
            .map(|p| {
                let mut t = s.clone();
                t.set(p, true);
                t
            })
            .collect()
    };
    let up1 = improve(&s1);
    let up2 = improve(&s2);
    let x2: Vec<usize> = up2.iter().map(|b| index(space, &s1, b)).collect();
    let x3: Vec<usize> = up1.iter().map(|a| index(space, a, &s2)).collect();
    let x1: Vec<usize> = up1
        .iter()
        .flat_map(|a| up2.iter().map(move |b| (a, b)))
        .map(|(a, b)| index(space, a, b))
        .collect();

    let mut push = |kind: DiscrepancyKind, expected: f64, actual: f64| {
        if (expected - actual).abs() > ROW_TOL {
            out.push(Discrepancy {
                state: x,
                kind,
                expected,
                actual,
            });
        }
    };
    let total = |set: &[usize]| set.iter().map(|&y| chain.prob(x, y)).sum::<f64>();
    push(
        DiscrepancyKind::Class("X2"),
        pc * (j - i + k) / nf + q * (nf - i) * j / (nf * nf),
        total(&x2),
    );
    push(
        DiscrepancyKind::Class("X3"),
        pc * k / nf + q * (nf - j) * i / (nf * nf),
        total(&x3),
    );
    push(
        DiscrepancyKind::Class("stay"),
        pc * (nf + i - j - 2.0 * k) / nf + q * (nf - i) * (nf - j) / (nf * nf),
        chain.prob(x, x),
    );
    for &y in &x1 {
        push(
            DiscrepancyKind::Entry { to: y },
            q / (nf * nf),
            chain.prob(x, y),
        );
    }
    let mut known: Vec<usize> = x1.iter().chain(&x2).chain(&x3).copied().collect();
    known.push(x);
    let (cols, vals) = chain.row(x);
    for (&c, &p) in cols.iter().zip(vals) {
        if !known.contains(&(c as usize)) {
            push(DiscrepancyKind::Entry { to: c as usize }, 0.0, p);
        }
    }
}

/// Checks, for `t <= steps` from the uniform start, that given the
/// leading-ones pair `(lo1, lo2)` with both below `n` every consistent state
/// is equally likely.
pub fn uniformity_check(chain: &TransitionMatrix, steps: usize) -> Result<Vec<Discrepancy>> {
    let space = chain.space();
    let n = space.n();
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for x in 0..chain.len() {
        let (a, b) = members(space, x);
        let key = (a.leading_ones(), b.leading_ones());
        if key.0 < n && key.1 < n {
            classes.entry(key).or_default().push(x);
        }
    }
    let mut out = Vec::new();
    for (t, pi) in trajectory(chain, &space.uniform(), steps)?
        .iter()
        .enumerate()
    {
        for (&(lo1, lo2), members) in &classes {
            let mass: f64 = members.iter().map(|&x| pi[x]).sum();
            if mass <= 0.0 {
                continue;
            }
            let expected = 1.0 / members.len() as f64;
            for &x in members {
                let actual = pi[x] / mass;
                if (actual - expected).abs() > UNIFORMITY_TOL {
                    out.push(Discrepancy {
                        state: x,
                        kind: DiscrepancyKind::Uniformity { t, lo1, lo2 },
                        expected,
                        actual,
                    });
                }
            }
        }
    }
    Ok(out)
}
