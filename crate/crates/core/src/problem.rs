use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::Error;

/// Pseudo-Boolean benchmark functions. Both have the all-ones string as
/// their unique optimum, with value `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Problem {
    LeadingOnes,
    OneMax,
}

impl Problem {
    pub const ALL: [Problem; 2] = [Problem::LeadingOnes, Problem::OneMax];

    #[inline]
    pub fn evaluate(self, s: &BitString) -> usize {
        match self {
            Problem::LeadingOnes => s.leading_ones(),
            Problem::OneMax => s.count_ones(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::LeadingOnes => "leadingones",
            Problem::OneMax => "onemax",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "leadingones" | "lo" => Ok(Problem::LeadingOnes),
            "onemax" | "om" => Ok(Problem::OneMax),
            other => Err(Error::InvalidArgument(format!("unknown problem {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates() {
        let s: BitString = "11010".parse().unwrap();
        assert_eq!(Problem::LeadingOnes.evaluate(&s), 2);
        assert_eq!(Problem::OneMax.evaluate(&s), 3);
        let opt = BitString::ones(7);
        for p in Problem::ALL {
            assert_eq!(p.evaluate(&opt), 7);
        }
    }

    #[test]
    fn names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert!("sphere".parse::<Problem>().is_err());
    }
}
