use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{CrossoverKind, MutationKind};
use crate::problem::Problem;
use crate::strategy::Strategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// (1+1)-EA, accepts the mutant when it is at least as good.
    OnePlusOne,
    /// (1+1_>)-EA, accepts only strictly better mutants.
    OnePlusOneStrict,
    /// (2:2)-EA, per-slot parent/offspring selection.
    TwoColonTwo,
    /// (2+2)-EA, keeps the best two of parents and offspring.
    TwoPlusTwo,
}

impl Algorithm {
    pub fn arity(self) -> usize {
        match self {
            Algorithm::OnePlusOne | Algorithm::OnePlusOneStrict => 1,
            Algorithm::TwoColonTwo | Algorithm::TwoPlusTwo => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::OnePlusOne => "1p1",
            Algorithm::OnePlusOneStrict => "1p1s",
            Algorithm::TwoColonTwo => "2c2",
            Algorithm::TwoPlusTwo => "2p2",
        }
    }
}

/// How a two-individual EA produces offspring each generation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Reproduction {
    /// Mutate every member.
    MutationOnly,
    /// Cross over with probability `pc`, otherwise mutate both members.
    Crossover { kind: CrossoverKind, pc: f64 },
    /// Let a strategy pick between mutation and crossover.
    Strategy(Strategy),
}

/// (2:2) behaviour when an offspring ties with its parent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TiePolicy {
    #[default]
    KeepParent,
    PreferOffspring,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EaConfig {
    pub algorithm: Algorithm,
    pub problem: Problem,
    pub mutation: MutationKind,
    pub reproduction: Reproduction,
    /// Only read by the (2:2)-EA.
    pub tie_policy: TiePolicy,
}

impl EaConfig {
    pub fn new(algorithm: Algorithm, problem: Problem, mutation: MutationKind) -> Self {
        Self {
            algorithm,
            problem,
            mutation,
            reproduction: Reproduction::MutationOnly,
            tie_policy: TiePolicy::KeepParent,
        }
    }

    pub fn with_crossover(mut self, kind: CrossoverKind, pc: f64) -> Self {
        self.reproduction = Reproduction::Crossover { kind, pc };
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.reproduction = Reproduction::Strategy(strategy);
        self
    }

    pub fn with_tie_policy(mut self, tie: TiePolicy) -> Self {
        self.tie_policy = tie;
        self
    }

    pub fn arity(&self) -> usize {
        self.algorithm.arity()
    }

    /// Crossover probability, zero for mutation-only and strategy configs.
    pub fn pc(&self) -> f64 {
        match self.reproduction {
            Reproduction::Crossover { pc, .. } => pc,
            _ => 0.0,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        match self.reproduction {
            Reproduction::MutationOnly => Ok(()),
            _ if self.arity() == 1 => Err(Error::InvalidConfig(format!(
                "{} has a single individual and cannot use crossover",
                self.algorithm.name()
            ))),
            Reproduction::Crossover { kind, pc } => {
                if !(0.0..=1.0).contains(&pc) || pc.is_nan() {
                    return Err(Error::InvalidConfig(format!(
                        "crossover probability {pc} outside [0, 1]"
                    )));
                }
                if kind == CrossoverKind::OnePoint && n < 2 && pc > 0.0 {
                    return Err(Error::InvalidConfig(
                        "one-point crossover needs n >= 2".into(),
                    ));
                }
                Ok(())
            }
            Reproduction::Strategy(_) => Ok(()),
        }
    }

    /// Short stable text key, used to label results and derive seeds.
    pub fn fingerprint(&self) -> String {
        let rep = match self.reproduction {
            Reproduction::MutationOnly => "mut".to_string(),
            Reproduction::Crossover { kind, pc } => format!("{kind}@{pc}"),
            Reproduction::Strategy(s) => s.name().to_string(),
        };
        let tie = match self.tie_policy {
            TiePolicy::KeepParent => "keep",
            TiePolicy::PreferOffspring => "prefer",
        };
        format!(
            "{}/{}/{}/{}/{}",
            self.algorithm.name(),
            self.problem,
            self.mutation,
            rep,
            tie
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1p1" | "1+1" => Ok(Algorithm::OnePlusOne),
            "1p1s" | "1+1>" | "1+1_>" => Ok(Algorithm::OnePlusOneStrict),
            "2c2" | "2:2" => Ok(Algorithm::TwoColonTwo),
            "2p2" | "2+2" => Ok(Algorithm::TwoPlusTwo),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "keep" | "keepparent" => Ok(TiePolicy::KeepParent),
            "prefer" | "preferoffspring" => Ok(TiePolicy::PreferOffspring),
            other => Err(Error::InvalidArgument(format!(
                "unknown tie policy {other:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_individual_rejects_crossover() {
        let c = EaConfig::new(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit)
            .with_crossover(CrossoverKind::OneBit, 0.5);
        assert!(matches!(c.validate(5), Err(Error::InvalidConfig(_))));
        let c = EaConfig::new(
            Algorithm::OnePlusOneStrict,
            Problem::OneMax,
            MutationKind::OneBit,
        )
        .with_strategy(Strategy::Mr1);
        assert!(c.validate(5).is_err());
    }

    #[test]
    fn pc_range_checked() {
        let base = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::OneMax,
            MutationKind::OneBit,
        );
        assert!(base
            .with_crossover(CrossoverKind::OneBit, 1.5)
            .validate(4)
            .is_err());
        assert!(base
            .with_crossover(CrossoverKind::OneBit, f64::NAN)
            .validate(4)
            .is_err());
        assert!(base
            .with_crossover(CrossoverKind::OneBit, 1.0)
            .validate(4)
            .is_ok());
        assert!(base
            .with_crossover(CrossoverKind::OnePoint, 0.5)
            .validate(1)
            .is_err());
    }

    #[test]
    fn fingerprints_differ() {
        let base = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        );
        let a = base
            .with_crossover(CrossoverKind::OneBit, 0.5)
            .fingerprint();
        let b = base
            .with_crossover(CrossoverKind::OneBit, 0.1)
            .fingerprint();
        assert_ne!(a, b);
        assert_eq!(a, "2c2/leadingones/onebit/onebit@0.5/keep");
    }

    #[test]
    fn names_parse() {
        for a in [
            Algorithm::OnePlusOne,
            Algorithm::OnePlusOneStrict,
            Algorithm::TwoColonTwo,
            Algorithm::TwoPlusTwo,
        ] {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!(
            "prefer".parse::<TiePolicy>().unwrap(),
            TiePolicy::PreferOffspring
        );
    }
}
