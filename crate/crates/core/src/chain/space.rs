use crate::bitstring::BitString;
use crate::ea::{EaState, Population};
use crate::error::{Error, Result};

/// Default cap on the number of enumerated states.
pub const DEFAULT_STATE_CAP: u128 = 1 << 20;

/// All states of a one- or two-individual EA on strings of length `n`.
///
/// A single string has index equal to its packed integer; an ordered pair
/// `(s1, s2)` has index `idx(s1) * 2^n + idx(s2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSpace {
    n: usize,
    arity: usize,
    len: usize,
}

impl StateSpace {
    pub fn new(n: usize, arity: usize) -> Result<Self> {
        Self::with_cap(n, arity, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(n: usize, arity: usize, cap: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if arity != 1 && arity != 2 {
            return Err(Error::InvalidArgument(format!(
                "arity {arity} is not 1 or 2"
            )));
        }
        let bits = n * arity;
        let states = if bits >= 128 {
            u128::MAX
        } else {
            1u128 << bits
        };
        if states > cap {
            return Err(Error::SizeLimit { states, cap });
        }
        Ok(Self {
            n,
            arity,
            len: states as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn split(&self, idx: usize) -> (u64, u64) {
        let i = idx as u64;
        (i >> self.n, i & ((1u64 << self.n) - 1))
    }

    pub fn state(&self, idx: usize) -> EaState {
        assert!(idx < self.len, "state index {idx} out of range");
        match self.arity {
            1 => EaState::Single(BitString::from_index(self.n, idx as u64)),
            _ => {
                let (a, b) = self.split(idx);
                EaState::Pair(Population {
                    s1: BitString::from_index(self.n, a),
                    s2: BitString::from_index(self.n, b),
                })
            }
        }
    }

    pub fn index_of(&self, state: &EaState) -> usize {
        assert_eq!(state.len(), self.n, "state length does not match space");
        match state {
            EaState::Single(s) => {
                assert_eq!(self.arity, 1, "single state in a pair space");
                s.to_index() as usize
            }
            EaState::Pair(p) => {
                assert_eq!(self.arity, 2, "pair state in a single space");
                ((p.s1.to_index() << self.n) | p.s2.to_index()) as usize
            }
        }
    }

    pub fn is_optimal(&self, idx: usize) -> bool {
        let full = (1u64 << self.n) - 1;
        match self.arity {
            1 => idx as u64 == full,
            _ => {
                let (a, b) = self.split(idx);
                a == full || b == full
            }
        }
    }

    pub fn optimal_count(&self) -> usize {
        match self.arity {
            1 => 1,
            _ => 2 * (1usize << self.n) - 1,
        }
    }

    pub fn uniform(&self) -> Vec<f64> {
        vec![1.0 / self.len as f64; self.len]
    }

    pub fn iter(&self) -> impl Iterator<Item = EaState> + '_ {
        (0..self.len).map(move |i| self.state(i))
    }
}

pub fn enumerate_population_space(n: usize, arity: usize) -> Result<StateSpace> {
    StateSpace::new(n, arity)
}
