use super::space::StateSpace;
use crate::bitstring::BitString;
use crate::ea::EaState;
use crate::error::{Error, Result};
use crate::problem::Problem;

/// State mapping from a population chain to a reference chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMap {
    /// Same state space on both sides.
    Identity,
    /// `1^m 0^(n-m)` with `m` the largest leading-ones count in the population.
    LeadingOnesPrefix,
    /// The member with the most one bits, ties to slot 1.
    OneMaxArgmax,
}

impl PhiMap {
    /// The map used with the reference algorithm for `problem`.
    pub fn for_problem(problem: Problem) -> Self {
        match problem {
            Problem::LeadingOnes => PhiMap::LeadingOnesPrefix,
            Problem::OneMax => PhiMap::OneMaxArgmax,
        }
    }

    pub fn apply(self, state: &EaState) -> EaState {
        match self {
            PhiMap::Identity => state.clone(),
            _ => EaState::Single(self.reduce(state)),
        }
    }

    fn reduce(self, state: &EaState) -> BitString {
        let members = state.members();
        match self {
            PhiMap::LeadingOnesPrefix => {
                let n = state.len();
                let m = members.iter().map(|s| s.leading_ones()).max().unwrap_or(0);
                let mut out = BitString::zeros(n);
                for pos in 1..=m {
                    out.set(pos, true);
                }
                out
            }
            _ => {
                let mut best = members[0];
                for s in &members[1..] {
                    if s.count_ones() > best.count_ones() {
                        best = s;
                    }
                }
                best.clone()
            }
        }
    }
}

/// Image of a population state under the map for `problem`.
pub fn phi_map(problem: Problem, state: &EaState) -> BitString {
    PhiMap::for_problem(problem).reduce(state)
}

/// `phi` as an index table from `from` to `to`, checking that a state is
/// optimal exactly when its image is.
pub fn phi_indices(phi: PhiMap, from: &StateSpace, to: &StateSpace) -> Result<Vec<usize>> {
    if from.n() != to.n() {
        return Err(Error::InvalidArgument(format!(
            "state spaces have n = {} and n = {}",
            from.n(),
            to.n()
        )));
    }
    let expected_arity = if phi == PhiMap::Identity {
        from.arity()
    } else {
        1
    };
    if to.arity() != expected_arity {
        return Err(Error::InvalidArgument(format!(
            "{phi:?} maps into arity {expected_arity}, target has arity {}",
            to.arity()
        )));
    }
    (0..from.len())
        .map(|i| {
            let j = to.index_of(&phi.apply(&from.state(i)));
            if from.is_optimal(i) != to.is_optimal(j) {
                return Err(Error::MappingInvalid { state: i });
            }
            Ok(j)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &str, b: &str) -> EaState {
        EaState::pair(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            phi_map(Problem::LeadingOnes, &pair("110", "101")).to_string(),
            "110"
        );
        assert_eq!(
            phi_map(Problem::OneMax, &pair("110", "011")).to_string(),
            "110"
        );
        assert_eq!(
            phi_map(Problem::OneMax, &pair("100", "011")).to_string(),
            "011"
        );
        assert_eq!(
            phi_map(Problem::LeadingOnes, &pair("111", "000")).to_string(),
            "111"
        );
        assert_eq!(
            phi_map(Problem::LeadingOnes, &pair("010", "001")).to_string(),
            "000"
        );
    }

    #[test]
    fn optimality_preserved_exhaustively() {
        for n in 1..=6 {
            let from = StateSpace::new(n, 2).unwrap();
            let to = StateSpace::new(n, 1).unwrap();
            for phi in [PhiMap::LeadingOnesPrefix, PhiMap::OneMaxArgmax] {
                let idx = phi_indices(phi, &from, &to).unwrap();
                assert_eq!(idx.len(), from.len());
            }
            assert!(phi_indices(PhiMap::Identity, &from, &from).is_ok());
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = StateSpace::new(3, 2).unwrap();
        let b = StateSpace::new(4, 1).unwrap();
        assert!(phi_indices(PhiMap::OneMaxArgmax, &a, &b).is_err());
        assert!(phi_indices(PhiMap::Identity, &a, &StateSpace::new(3, 1).unwrap()).is_err());
    }
}
