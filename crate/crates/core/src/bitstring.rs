//! Fixed-length bit strings.
//!
//! Positions are 1-based and read left to right: position `a` of a string of
//! length `n` is stored in bit `a - 1` of the packed words. The leading-ones
//! count is therefore the number of trailing one bits of the packed integer.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    words: Words,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        let mut words = Words::new();
        words.resize(word_count(len), 0);
        Self { len, words }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds the string whose packed integer value is `index` (`len <= 64`).
    pub fn from_index(len: usize, index: u64) -> Self {
        assert!(len <= 64, "from_index supports at most 64 positions");
        let mut s = Self::zeros(len);
        if len > 0 {
            s.words[0] = index;
            s.trim();
        }
        s
    }

    /// Packed integer value, the inverse of [`BitString::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64, "to_index supports at most 64 positions");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            if b {
                s.words[k / 64] |= 1 << (k % 64);
            }
        }
        s
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = rng.random();
        }
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn check(&self, pos: usize) {
        assert!(
            pos >= 1 && pos <= self.len,
            "position {pos} out of range 1..={}",
            self.len
        );
    }

    /// Value at 1-based position `pos`.
    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        self.check(pos);
        let k = pos - 1;
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, pos: usize, value: bool) {
        self.check(pos);
        let k = pos - 1;
        let mask = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, pos: usize) {
        self.check(pos);
        let k = pos - 1;
        self.words[k / 64] ^= 1 << (k % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Length of the longest all-ones prefix.
    pub fn leading_ones(&self) -> usize {
        let mut total = 0;
        for &w in &self.words {
            let t = w.trailing_ones() as usize;
            total += t;
            if t < 64 {
                break;
            }
        }
        total.min(self.len)
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn hamming(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Smallest position where the two strings differ.
    pub fn first_diff(&self, other: &Self) -> Option<usize> {
        assert_eq!(self.len, other.len, "length mismatch");
        for (k, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let x = a ^ b;
            if x != 0 {
                return Some(k * 64 + x.trailing_zeros() as usize + 1);
            }
        }
        None
    }

    /// All positions where the two strings differ, in increasing order.
    pub fn diff_positions(&self, other: &Self) -> Vec<usize> {
        assert_eq!(self.len, other.len, "length mismatch");
        let mut out = Vec::new();
        for (k, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let mut x = a ^ b;
            while x != 0 {
                out.push(k * 64 + x.trailing_zeros() as usize + 1);
                x &= x - 1;
            }
        }
        out
    }

    /// Exchanges the bits at positions `from..=self.len()` between two strings.
    pub fn swap_suffix(&mut self, other: &mut Self, from: usize) {
        assert_eq!(self.len, other.len, "length mismatch");
        self.check(from);
        let k = from - 1;
        let first = k / 64;
        for w in first..self.words.len() {
            let mask = if w == first {
                u64::MAX << (k % 64)
            } else {
                u64::MAX
            };
            let diff = (self.words[w] ^ other.words[w]) & mask;
            self.words[w] ^= diff;
            other.words[w] ^= diff;
        }
    }

    /// Exchanges the bit at position `pos` between two strings.
    pub fn swap_bit(&mut self, other: &mut Self, pos: usize) {
        let a = self.get(pos);
        let b = other.get(pos);
        self.set(pos, b);
        other.set(pos, a);
    }

    /// Flips every position whose bit is set in `mask` (same length).
    pub fn xor_assign(&mut self, mask: &Self) {
        assert_eq!(self.len, mask.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&mask.words) {
            *a ^= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |p| self.get(p))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "bit strings contain only 0 and 1, found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bools(&bits))
    }
}
