//! The four evolutionary algorithms: reproduction, selection, one step and
//! a full run until the optimum is found.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::config::{Algorithm, EaConfig, Reproduction, TiePolicy};
use crate::error::{Error, Result};
use crate::operators::{crossover, crossover_outcomes, mutate, mutation_outcomes, CrossoverKind};
use crate::problem::Problem;
use crate::rng::rng_from_seed;
use crate::strategy::Action;

/// An ordered pair of solutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Population {
    pub s1: BitString,
    pub s2: BitString,
}

impl Population {
    pub fn new(s1: BitString, s2: BitString) -> Result<Self> {
        if s1.len() != s2.len() {
            return Err(Error::InvalidArgument(format!(
                "population members have lengths {} and {}",
                s1.len(),
                s2.len()
            )));
        }
        Ok(Self { s1, s2 })
    }
}

/// Current state of an EA run.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EaState {
    Single(BitString),
    Pair(Population),
}

/// Offspring produced by one reproduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Offspring {
    Single(BitString),
    Pair(BitString, BitString),
}

impl EaState {
    pub fn pair(s1: BitString, s2: BitString) -> Result<Self> {
        Ok(EaState::Pair(Population::new(s1, s2)?))
    }

    pub fn random<R: Rng + ?Sized>(arity: usize, n: usize, rng: &mut R) -> Self {
        match arity {
            1 => EaState::Single(BitString::random(n, rng)),
            2 => {
                let s1 = BitString::random(n, rng);
                let s2 = BitString::random(n, rng);
                EaState::Pair(Population { s1, s2 })
            }
            _ => panic!("arity must be 1 or 2"),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            EaState::Single(_) => 1,
            EaState::Pair(_) => 2,
        }
    }

    pub fn len(&self) -> usize {
        self.members()[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> Vec<&BitString> {
        match self {
            EaState::Single(s) => vec![s],
            EaState::Pair(p) => vec![&p.s1, &p.s2],
        }
    }

    /// True when some member is the all-ones string.
    pub fn is_optimal(&self) -> bool {
        match self {
            EaState::Single(s) => s.is_all_ones(),
            EaState::Pair(p) => p.s1.is_all_ones() || p.s2.is_all_ones(),
        }
    }

    pub fn best_fitness(&self, problem: Problem) -> usize {
        match self {
            EaState::Single(s) => problem.evaluate(s),
            EaState::Pair(p) => problem.evaluate(&p.s1).max(problem.evaluate(&p.s2)),
        }
    }
}

fn expect_arity(config: &EaConfig, state: &EaState) {
    assert_eq!(
        config.arity(),
        state.arity(),
        "{} needs a state with {} member(s)",
        config.algorithm,
        config.arity()
    );
}

/// Crossover that treats identical parents as a no-op for operators that
/// need a differing position.
fn cross_or_copy<R: Rng + ?Sized>(
    kind: CrossoverKind,
    p: &Population,
    rng: &mut R,
) -> (BitString, BitString) {
    if kind.needs_difference() && p.s1 == p.s2 {
        return (p.s1.clone(), p.s2.clone());
    }
    crossover(kind, &p.s1, &p.s2, rng).expect("population validated by config")
}

pub fn reproduce<R: Rng + ?Sized>(config: &EaConfig, state: &EaState, rng: &mut R) -> Offspring {
    expect_arity(config, state);
    let p = match state {
        EaState::Single(s) => return Offspring::Single(mutate(config.mutation, s, rng)),
        EaState::Pair(p) => p,
    };
    let mutate_both = |rng: &mut R| {
        Offspring::Pair(
            mutate(config.mutation, &p.s1, rng),
            mutate(config.mutation, &p.s2, rng),
        )
    };
    match config.reproduction {
        Reproduction::MutationOnly => mutate_both(rng),
        Reproduction::Crossover { kind, pc } => {
            if rng.random_bool(pc) {
                let (a, b) = cross_or_copy(kind, p, rng);
                Offspring::Pair(a, b)
            } else {
                mutate_both(rng)
            }
        }
        Reproduction::Strategy(strategy) => match strategy.decide(&p.s1, &p.s2, rng) {
            Action::Mutate => mutate_both(rng),
            Action::Crossover(kind) => {
                let (a, b) = cross_or_copy(kind, p, rng);
                Offspring::Pair(a, b)
            }
        },
    }
}

/// Deterministic survivor selection.
pub fn select(config: &EaConfig, parent: &EaState, offspring: Offspring) -> EaState {
    let f = |s: &BitString| config.problem.evaluate(s);
    match (config.algorithm, parent, offspring) {
        (Algorithm::OnePlusOne, EaState::Single(s), Offspring::Single(c)) => {
            if f(&c) >= f(s) {
                EaState::Single(c)
            } else {
                parent.clone()
            }
        }
        (Algorithm::OnePlusOneStrict, EaState::Single(s), Offspring::Single(c)) => {
            if f(&c) > f(s) {
                EaState::Single(c)
            } else {
                parent.clone()
            }
        }
        (Algorithm::TwoColonTwo, EaState::Pair(p), Offspring::Pair(c1, c2)) => {
            let keep = |parent: &BitString, child: BitString| {
                let (fp, fc) = (f(parent), f(&child));
                let take = match config.tie_policy {
                    TiePolicy::KeepParent => fc > fp,
                    TiePolicy::PreferOffspring => fc >= fp,
                };
                if take {
                    child
                } else {
                    parent.clone()
                }
            };
            EaState::Pair(Population {
                s1: keep(&p.s1, c1),
                s2: keep(&p.s2, c2),
            })
        }
        (Algorithm::TwoPlusTwo, EaState::Pair(p), Offspring::Pair(c1, c2)) => {
            let mut all = [(f(&p.s1), 0usize), (f(&p.s2), 1), (f(&c1), 2), (f(&c2), 3)];
            // stable: equal fitness keeps the order s1, s2, s1', s2'
            all.sort_by_key(|a| std::cmp::Reverse(a.0));
            let pick = |k: usize| match k {
                0 => p.s1.clone(),
                1 => p.s2.clone(),
                2 => c1.clone(),
                _ => c2.clone(),
            };
            EaState::Pair(Population {
                s1: pick(all[0].1),
                s2: pick(all[1].1),
            })
        }
        (algo, _, _) => panic!("state shape does not match {algo}"),
    }
}

/// One reproduction plus selection step.
pub fn ea_step<R: Rng + ?Sized>(config: &EaConfig, state: &EaState, rng: &mut R) -> EaState {
    let off = reproduce(config, state, rng);
    select(config, state, off)
}

fn mutation_pairs(config: &EaConfig, p: &Population) -> Result<Vec<(f64, Offspring)>> {
    let m1 = mutation_outcomes(config.mutation, &p.s1)?;
    let m2 = mutation_outcomes(config.mutation, &p.s2)?;
    let mut out = Vec::with_capacity(m1.len() * m2.len());
    for (q1, a) in &m1 {
        for (q2, b) in &m2 {
            out.push((q1 * q2, Offspring::Pair(a.clone(), b.clone())));
        }
    }
    Ok(out)
}

fn crossover_pairs(kind: CrossoverKind, p: &Population) -> Result<Vec<(f64, Offspring)>> {
    if kind.needs_difference() && p.s1 == p.s2 {
        return Ok(vec![(1.0, Offspring::Pair(p.s1.clone(), p.s2.clone()))]);
    }
    Ok(crossover_outcomes(kind, &p.s1, &p.s2)?
        .into_iter()
        .map(|(q, a, b)| (q, Offspring::Pair(a, b)))
        .collect())
}

/// Exact distribution of [`reproduce`]. Outcomes are not merged.
pub fn reproduction_outcomes(config: &EaConfig, state: &EaState) -> Result<Vec<(f64, Offspring)>> {
    expect_arity(config, state);
    let p = match state {
        EaState::Single(s) => {
            return Ok(mutation_outcomes(config.mutation, s)?
                .into_iter()
                .map(|(q, c)| (q, Offspring::Single(c)))
                .collect())
        }
        EaState::Pair(p) => p,
    };
    let scaled = |w: f64, v: Vec<(f64, Offspring)>| v.into_iter().map(move |(q, o)| (w * q, o));
    let mut out = Vec::new();
    match config.reproduction {
        Reproduction::MutationOnly => out = mutation_pairs(config, p)?,
        Reproduction::Crossover { kind, pc } => {
            if pc > 0.0 {
                out.extend(scaled(pc, crossover_pairs(kind, p)?));
            }
            if pc < 1.0 {
                out.extend(scaled(1.0 - pc, mutation_pairs(config, p)?));
            }
        }
        Reproduction::Strategy(strategy) => {
            for (w, action) in strategy.action_distribution(&p.s1, &p.s2) {
                let part = match action {
                    Action::Mutate => mutation_pairs(config, p)?,
                    Action::Crossover(kind) => crossover_pairs(kind, p)?,
                };
                out.extend(scaled(w, part));
            }
        }
    }
    Ok(out)
}

/// Outcome of one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    /// Generations until an optimal state was first reached, or the cutoff.
    pub steps: u64,
    /// True when the cutoff was hit first.
    pub censored: bool,
}

/// Runs from a uniformly random initial state drawn from `seed`.
pub fn run_trial(config: &EaConfig, n: usize, seed: u64, cutoff: u64) -> Result<TrialResult> {
    config.validate(n)?;
    let mut rng = rng_from_seed(seed);
    let init = EaState::random(config.arity(), n, &mut rng);
    Ok(run_from(config, init, &mut rng, cutoff))
}

/// Runs from a given initial state.
pub fn run_trial_from<R: Rng + ?Sized>(
    config: &EaConfig,
    initial: EaState,
    rng: &mut R,
    cutoff: u64,
) -> Result<TrialResult> {
    config.validate(initial.len())?;
    if initial.arity() != config.arity() {
        return Err(Error::InvalidArgument(format!(
            "{} needs {} member(s), got {}",
            config.algorithm,
            config.arity(),
            initial.arity()
        )));
    }
    Ok(run_from(config, initial, rng, cutoff))
}

fn run_from<R: Rng + ?Sized>(
    config: &EaConfig,
    mut state: EaState,
    rng: &mut R,
    cutoff: u64,
) -> TrialResult {
    let mut steps = 0;
    while !state.is_optimal() {
        if steps == cutoff {
            return TrialResult {
                steps,
                censored: true,
            };
        }
        state = ea_step(config, &state, rng);
        steps += 1;
    }
    TrialResult {
        steps,
        censored: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::MutationKind;
    use crate::rng::rng_from_seed;
    use crate::strategy::Strategy;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn pair(a: &str, b: &str) -> EaState {
        EaState::pair(bs(a), bs(b)).unwrap()
    }

    fn cfg(algo: Algorithm, problem: Problem) -> EaConfig {
        EaConfig::new(algo, problem, MutationKind::OneBit)
    }

    #[test]
    fn one_plus_one_variants_differ_on_ties() {
        let parent = EaState::Single(bs("1000"));
        let tie = Offspring::Single(bs("1001"));
        let weak = cfg(Algorithm::OnePlusOne, Problem::LeadingOnes);
        let strict = cfg(Algorithm::OnePlusOneStrict, Problem::LeadingOnes);
        assert_eq!(
            select(&weak, &parent, tie.clone()),
            EaState::Single(bs("1001"))
        );
        assert_eq!(select(&strict, &parent, tie), parent);
    }

    #[test]
    fn two_colon_two_selects_per_slot() {
        let c = cfg(Algorithm::TwoColonTwo, Problem::OneMax);
        let next = select(
            &c,
            &pair("1100", "1000"),
            Offspring::Pair(bs("1110"), bs("0000")),
        );
        assert_eq!(next, pair("1110", "1000"));
        // ties
        let off = Offspring::Pair(bs("0110"), bs("0100"));
        assert_eq!(
            select(&c, &pair("1100", "1000"), off.clone()),
            pair("1100", "1000")
        );
        let p = c.with_tie_policy(TiePolicy::PreferOffspring);
        assert_eq!(select(&p, &pair("1100", "1000"), off), pair("0110", "0100"));
    }

    #[test]
    fn two_plus_two_keeps_best_two_stably() {
        let c = cfg(Algorithm::TwoPlusTwo, Problem::OneMax);
        let next = select(
            &c,
            &pair("1000", "1100"),
            Offspring::Pair(bs("1110"), bs("0011")),
        );
        assert_eq!(next, pair("1110", "1100"));
        // all equal fitness: parents survive in order
        let next = select(
            &c,
            &pair("1000", "0100"),
            Offspring::Pair(bs("0010"), bs("0001")),
        );
        assert_eq!(next, pair("1000", "0100"));
        // tie between s2 and s1' goes to s2
        let next = select(
            &c,
            &pair("1110", "1100"),
            Offspring::Pair(bs("0011"), bs("0000")),
        );
        assert_eq!(next, pair("1110", "1100"));
    }

    #[test]
    fn outcomes_sum_to_one() {
        let base = cfg(Algorithm::TwoPlusTwo, Problem::LeadingOnes);
        let configs = [
            base,
            base.with_crossover(CrossoverKind::OnePoint, 0.5),
            base.with_crossover(CrossoverKind::Uniform, 1.0),
            base.with_crossover(CrossoverKind::FirstDiffBit, 0.3),
            base.with_strategy(Strategy::Mr3),
        ];
        for c in configs {
            for st in [pair("1010", "0110"), pair("0000", "0000")] {
                let outs = reproduction_outcomes(&c, &st).unwrap();
                let total: f64 = outs.iter().map(|o| o.0).sum();
                assert!((total - 1.0).abs() < 1e-12, "{}", c.fingerprint());
            }
        }
    }

    #[test]
    fn diff_crossover_on_identical_parents_copies_them() {
        let c = cfg(Algorithm::TwoColonTwo, Problem::OneMax)
            .with_crossover(CrossoverKind::OneDiffBit, 1.0);
        let st = pair("0101", "0101");
        let mut rng = rng_from_seed(1);
        assert_eq!(ea_step(&c, &st, &mut rng), st);
    }

    #[test]
    fn stuck_run_is_censored() {
        let c = cfg(Algorithm::TwoColonTwo, Problem::LeadingOnes)
            .with_crossover(CrossoverKind::OneBit, 1.0);
        let mut rng = rng_from_seed(0);
        let r = run_trial_from(&c, pair("00", "00"), &mut rng, 5).unwrap();
        assert_eq!(
            r,
            TrialResult {
                steps: 5,
                censored: true
            }
        );
    }

    #[test]
    fn optimal_start_takes_zero_steps() {
        let c = cfg(Algorithm::OnePlusOne, Problem::OneMax);
        let mut rng = rng_from_seed(0);
        let r = run_trial_from(&c, EaState::Single(bs("111")), &mut rng, 10).unwrap();
        assert_eq!(
            r,
            TrialResult {
                steps: 0,
                censored: false
            }
        );
    }

    #[test]
    fn trials_are_reproducible() {
        let c = cfg(Algorithm::TwoColonTwo, Problem::LeadingOnes)
            .with_crossover(CrossoverKind::Uniform, 0.5);
        for seed in 0..20 {
            assert_eq!(
                run_trial(&c, 12, seed, 100_000).unwrap(),
                run_trial(&c, 12, seed, 100_000).unwrap()
            );
        }
    }

    #[test]
    fn best_fitness_never_drops() {
        let base = cfg(Algorithm::TwoColonTwo, Problem::LeadingOnes);
        let configs = [
            base.with_crossover(CrossoverKind::OnePoint, 0.7),
            cfg(Algorithm::TwoPlusTwo, Problem::OneMax).with_crossover(CrossoverKind::Uniform, 0.7),
            base.with_strategy(Strategy::Mr2),
            cfg(Algorithm::OnePlusOne, Problem::OneMax),
        ];
        let mut rng = rng_from_seed(5);
        for c in configs {
            let mut st = EaState::random(c.arity(), 20, &mut rng);
            for _ in 0..2000 {
                let next = ea_step(&c, &st, &mut rng);
                assert!(next.best_fitness(c.problem) >= st.best_fitness(c.problem));
                st = next;
            }
        }
    }
}
