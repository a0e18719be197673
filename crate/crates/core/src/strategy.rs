//! Rules that pick, per generation, between mutation and a specific
//! crossover based on the current pair of solutions.
//!
//! The pair is first put in canonical order: `A` is the member with more
//! ones (ties go to the larger leading-ones value, then to slot one) and `B`
//! is the other member. With `i = n - |A|` and `delta = |A| - |B|` every
//! rule is a function of `(n, LO(A), LO(B), i, delta)` plus, for `Mr3`, a
//! fair coin.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::Error;
use crate::operators::CrossoverKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Mr1a,
    Mr1b,
    Mr1,
    Mr2,
    Mr3,
}

/// What a strategy asks the EA to do this generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// Mutate both members independently.
    Mutate,
    Crossover(CrossoverKind),
}

/// Canonical description of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStats {
    pub n: usize,
    pub lo_a: usize,
    pub lo_b: usize,
    /// Zeros in `A`.
    pub i: usize,
    /// `|A| - |B|`, never negative.
    pub delta: usize,
    pub identical: bool,
}

impl PairStats {
    pub fn new(s1: &BitString, s2: &BitString) -> Self {
        let (o1, o2) = (s1.count_ones(), s2.count_ones());
        let (l1, l2) = (s1.leading_ones(), s2.leading_ones());
        let first_is_a = o1 > o2 || (o1 == o2 && l1 >= l2);
        let (oa, ob, la, lb) = if first_is_a {
            (o1, o2, l1, l2)
        } else {
            (o2, o1, l2, l1)
        };
        PairStats {
            n: s1.len(),
            lo_a: la,
            lo_b: lb,
            i: s1.len() - oa,
            delta: oa - ob,
            identical: s1 == s2,
        }
    }
}

/// `(i + delta) * (1 + n (i + delta) / (n - i - delta))^i <= n`, false when
/// `n - i - delta = 0`.
pub fn mr3_condition(n: usize, i: usize, delta: usize) -> bool {
    let d = i + delta;
    if d >= n {
        return false;
    }
    let nf = n as f64;
    let df = d as f64;
    let base = 1.0 + nf * df / (nf - df);
    df * base.powi(i as i32) <= nf
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Mr1a,
        Strategy::Mr1b,
        Strategy::Mr1,
        Strategy::Mr2,
        Strategy::Mr3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Mr1a => "mr1a",
            Strategy::Mr1b => "mr1b",
            Strategy::Mr1 => "mr1",
            Strategy::Mr2 => "mr2",
            Strategy::Mr3 => "mr3",
        }
    }

    /// Smallest `n` at which the strategy is claimed to beat pure mutation.
    pub fn min_n(self) -> usize {
        match self {
            Strategy::Mr1a | Strategy::Mr3 => 2,
            Strategy::Mr2 => 8,
            Strategy::Mr1b | Strategy::Mr1 => 16,
        }
    }

    /// The decision when the coin (used only by `Mr3`) shows `heads`.
    pub fn decide_with_coin(self, st: &PairStats, heads: bool) -> Action {
        let first_diff_bit = st.lo_a < st.lo_b || (st.delta == 0 && st.lo_a != st.lo_b);
        let mr1b = st.lo_a > st.lo_b && st.delta > 0 && st.delta <= 2;
        let pick = |c: bool, k: CrossoverKind| {
            if c {
                Action::Crossover(k)
            } else {
                Action::Mutate
            }
        };
        match self {
            Strategy::Mr1a => pick(first_diff_bit, CrossoverKind::FirstDiffBit),
            Strategy::Mr1b => pick(mr1b, CrossoverKind::FirstDiffBit),
            Strategy::Mr1 => pick(first_diff_bit || mr1b, CrossoverKind::FirstDiffBit),
            Strategy::Mr2 => {
                if first_diff_bit {
                    Action::Crossover(CrossoverKind::FirstDiffBit)
                } else {
                    pick(
                        st.lo_a > st.lo_b && st.delta != 0,
                        CrossoverKind::FirstDiffPoint,
                    )
                }
            }
            Strategy::Mr3 => pick(
                !st.identical && heads && mr3_condition(st.n, st.i, st.delta),
                CrossoverKind::OneDiffBit,
            ),
        }
    }

    fn uses_coin(self, st: &PairStats) -> bool {
        self == Strategy::Mr3 && !st.identical
    }

    pub fn decide<R: Rng + ?Sized>(self, s1: &BitString, s2: &BitString, rng: &mut R) -> Action {
        let st = PairStats::new(s1, s2);
        let heads = if self.uses_coin(&st) {
            rng.random_bool(0.5)
        } else {
            false
        };
        self.decide_with_coin(&st, heads)
    }

    /// Exact distribution of the decision.
    pub fn action_distribution(self, s1: &BitString, s2: &BitString) -> Vec<(f64, Action)> {
        let st = PairStats::new(s1, s2);
        if !self.uses_coin(&st) {
            return vec![(1.0, self.decide_with_coin(&st, false))];
        }
        let heads = self.decide_with_coin(&st, true);
        let tails = self.decide_with_coin(&st, false);
        if heads == tails {
            vec![(1.0, heads)]
        } else {
            vec![(0.5, heads), (0.5, tails)]
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.to_ascii_lowercase().replace(['-', '_', '&'], "");
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown strategy {s:?}")))
    }
}
