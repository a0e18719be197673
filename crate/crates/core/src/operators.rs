//! Mutation and crossover operators.
//!
//! Every operator comes twice: a sampler driven by an RNG, and an exact
//! enumeration of its outcomes with their probabilities. The Markov-chain
//! builder uses the second form; tests check that the two agree.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Largest string length for which 2^n-outcome operators are enumerated.
pub const MAX_ENUMERATION_BITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MutationKind {
    /// Flip exactly one uniformly chosen position.
    OneBit,
    /// Flip each position independently with probability 1/n.
    Bitwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossoverKind {
    /// Cut uniformly in 1..=n-1 and swap the suffixes after the cut.
    OnePoint,
    /// Swap each position independently with probability 1/n.
    Uniform,
    /// Swap one uniformly chosen position.
    OneBit,
    /// Swap one position chosen uniformly among the differing ones.
    OneDiffBit,
    /// Swap the first differing position.
    FirstDiffBit,
    /// Swap the whole suffix starting at the first differing position.
    FirstDiffPoint,
}

impl MutationKind {
    pub fn name(self) -> &'static str {
        match self {
            MutationKind::OneBit => "onebit",
            MutationKind::Bitwise => "bitwise",
        }
    }
}

impl CrossoverKind {
    pub const ALL: [CrossoverKind; 6] = [
        CrossoverKind::OnePoint,
        CrossoverKind::Uniform,
        CrossoverKind::OneBit,
        CrossoverKind::OneDiffBit,
        CrossoverKind::FirstDiffBit,
        CrossoverKind::FirstDiffPoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossoverKind::OnePoint => "onepoint",
            CrossoverKind::Uniform => "uniform",
            CrossoverKind::OneBit => "onebit",
            CrossoverKind::OneDiffBit => "onediffbit",
            CrossoverKind::FirstDiffBit => "firstdiffbit",
            CrossoverKind::FirstDiffPoint => "firstdiffpoint",
        }
    }

    /// Operators that are undefined on identical parents.
    pub fn needs_difference(self) -> bool {
        matches!(
            self,
            CrossoverKind::OneDiffBit | CrossoverKind::FirstDiffBit | CrossoverKind::FirstDiffPoint
        )
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for CrossoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MutationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "onebit" => Ok(MutationKind::OneBit),
            "bitwise" | "standard" => Ok(MutationKind::Bitwise),
            other => Err(Error::InvalidArgument(format!(
                "unknown mutation {other:?}"
            ))),
        }
    }
}

impl FromStr for CrossoverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        CrossoverKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown crossover {s:?}")))
    }
}

pub fn mutate<R: Rng + ?Sized>(kind: MutationKind, s: &BitString, rng: &mut R) -> BitString {
    let n = s.len();
    let mut out = s.clone();
    if n == 0 {
        return out;
    }
    match kind {
        MutationKind::OneBit => out.flip(rng.random_range(1..=n)),
        MutationKind::Bitwise => {
            let p = 1.0 / n as f64;
            for pos in 1..=n {
                if rng.random_bool(p) {
                    out.flip(pos);
                }
            }
        }
    }
    out
}

/// Applies a crossover operator to an ordered pair of parents.
pub fn crossover<R: Rng + ?Sized>(
    kind: CrossoverKind,
    s1: &BitString,
    s2: &BitString,
    rng: &mut R,
) -> Result<(BitString, BitString)> {
    check_pair(kind, s1, s2)?;
    let n = s1.len();
    let mut a = s1.clone();
    let mut b = s2.clone();
    match kind {
        CrossoverKind::OnePoint => {
            let cut = rng.random_range(1..n);
            a.swap_suffix(&mut b, cut + 1);
        }
        CrossoverKind::Uniform => {
            let p = 1.0 / n as f64;
            for pos in 1..=n {
                if rng.random_bool(p) {
                    a.swap_bit(&mut b, pos);
                }
            }
        }
        CrossoverKind::OneBit => {
            let pos = rng.random_range(1..=n);
            a.swap_bit(&mut b, pos);
        }
        CrossoverKind::OneDiffBit => {
            let diffs = s1.diff_positions(s2);
            let pos = diffs[rng.random_range(0..diffs.len())];
            a.swap_bit(&mut b, pos);
        }
        CrossoverKind::FirstDiffBit => {
            let pos = s1.first_diff(s2).expect("checked above");
            a.swap_bit(&mut b, pos);
        }
        CrossoverKind::FirstDiffPoint => {
            let pos = s1.first_diff(s2).expect("checked above");
            a.swap_suffix(&mut b, pos);
        }
    }
    Ok((a, b))
}

fn check_pair(kind: CrossoverKind, s1: &BitString, s2: &BitString) -> Result<()> {
    if s1.len() != s2.len() {
        return Err(Error::InvalidArgument(format!(
            "parents have lengths {} and {}",
            s1.len(),
            s2.len()
        )));
    }
    if s1.is_empty() {
        return Err(Error::InvalidArgument("crossover on empty strings".into()));
    }
    if kind == CrossoverKind::OnePoint && s1.len() < 2 {
        return Err(Error::InvalidArgument(
            "one-point crossover needs n >= 2".into(),
        ));
    }
    if kind.needs_difference() && s1 == s2 {
        return Err(Error::IdenticalParents);
    }
    Ok(())
}

/// All mutants of `s` with positive probability. Probabilities sum to one.
pub fn mutation_outcomes(kind: MutationKind, s: &BitString) -> Result<Vec<(f64, BitString)>> {
    let n = s.len();
    if n == 0 {
        return Ok(vec![(1.0, s.clone())]);
    }
    match kind {
        MutationKind::OneBit => {
            let p = 1.0 / n as f64;
            Ok((1..=n)
                .map(|pos| {
                    let mut t = s.clone();
                    t.flip(pos);
                    (p, t)
                })
                .collect())
        }
        MutationKind::Bitwise => {
            if n > MAX_ENUMERATION_BITS {
                return Err(Error::EnumerationLimit(format!(
                    "bitwise mutation outcomes are enumerated only up to n = {MAX_ENUMERATION_BITS}"
                )));
            }
            let positions: Vec<usize> = (1..=n).collect();
            Ok(subset_outcomes(&positions, 1.0 / n as f64)
                .into_iter()
                .map(|(p, subset)| {
                    let mut t = s.clone();
                    for pos in subset {
                        t.flip(pos);
                    }
                    (p, t)
                })
                .collect())
        }
    }
}

/// All offspring pairs of a crossover with positive probability. Outcomes
/// are not merged, so equal pairs may appear more than once.
pub fn crossover_outcomes(
    kind: CrossoverKind,
    s1: &BitString,
    s2: &BitString,
) -> Result<Vec<(f64, BitString, BitString)>> {
    check_pair(kind, s1, s2)?;
    let n = s1.len();
    let swap_one = |pos: usize| {
        let mut a = s1.clone();
        let mut b = s2.clone();
        a.swap_bit(&mut b, pos);
        (a, b)
    };
    let out = match kind {
        CrossoverKind::OnePoint => {
            let p = 1.0 / (n - 1) as f64;
            (1..n)
                .map(|cut| {
                    let mut a = s1.clone();
                    let mut b = s2.clone();
                    a.swap_suffix(&mut b, cut + 1);
                    (p, a, b)
                })
                .collect()
        }
        CrossoverKind::Uniform => {
            // Swapping a position where the parents agree changes nothing,
            // so only the differing positions need to be enumerated.
            let diffs = s1.diff_positions(s2);
            if diffs.len() > MAX_ENUMERATION_BITS {
                return Err(Error::EnumerationLimit(format!(
                    "uniform crossover outcomes are enumerated only up to {MAX_ENUMERATION_BITS} differing positions"
                )));
            }
            subset_outcomes(&diffs, 1.0 / n as f64)
                .into_iter()
                .map(|(p, subset)| {
                    let mut a = s1.clone();
                    let mut b = s2.clone();
                    for pos in subset {
                        a.swap_bit(&mut b, pos);
                    }
                    (p, a, b)
                })
                .collect()
        }
        CrossoverKind::OneBit => {
            let p = 1.0 / n as f64;
            (1..=n)
                .map(|pos| {
                    let (a, b) = swap_one(pos);
                    (p, a, b)
                })
                .collect()
        }
        CrossoverKind::OneDiffBit => {
            let diffs = s1.diff_positions(s2);
            let p = 1.0 / diffs.len() as f64;
            diffs
                .into_iter()
                .map(|pos| {
                    let (a, b) = swap_one(pos);
                    (p, a, b)
                })
                .collect()
        }
        CrossoverKind::FirstDiffBit => {
            let (a, b) = swap_one(s1.first_diff(s2).expect("checked above"));
            vec![(1.0, a, b)]
        }
        CrossoverKind::FirstDiffPoint => {
            let pos = s1.first_diff(s2).expect("checked above");
            let mut a = s1.clone();
            let mut b = s2.clone();
            a.swap_suffix(&mut b, pos);
            vec![(1.0, a, b)]
        }
    };
    Ok(out)
}

/// Every subset of `positions` where each element is picked independently
/// with probability `p`. Zero-probability subsets are dropped.
fn subset_outcomes(positions: &[usize], p: f64) -> Vec<(f64, Vec<usize>)> {
    let k = positions.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1u64 << k) {
        let picked = mask.count_ones() as i32;
        let prob = p.powi(picked) * (1.0 - p).powi(k as i32 - picked);
        if prob == 0.0 {
            continue;
        }
        let subset = (0..k)
            .filter(|b| (mask >> b) & 1 == 1)
            .map(|b| positions[b])
            .collect();
        out.push((prob, subset));
    }
    out
}
