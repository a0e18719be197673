//! Expectations of population statistics under a state distribution of a
//! two-individual chain.

use super::matrix::TransitionMatrix;
use crate::bitstring::BitString;
use crate::error::{Error, Result};

fn expect(
    chain: &TransitionMatrix,
    pi: &[f64],
    f: impl Fn(&BitString, &BitString) -> f64,
) -> Result<f64> {
    if chain.space().arity() != 2 {
        return Err(Error::InvalidArgument(
            "observables need a two-individual chain".into(),
        ));
    }
    if pi.len() != chain.len() {
        return Err(Error::InvalidDistribution(format!(
            "length {} for {} states",
            pi.len(),
            chain.len()
        )));
    }
    Ok(pi
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0.0)
        .map(|(x, &p)| {
            let st = chain.space().state(x);
            let m = st.members();
            p * f(m[0], m[1])
        })
        .sum())
}

/// `(P(s1(pos), s2(pos)) = (0,0), P(... ) = (0,1))` at 1-based `pos`.
pub fn position_marginals(chain: &TransitionMatrix, pi: &[f64], pos: usize) -> Result<(f64, f64)> {
    if pos == 0 || pos > chain.n() {
        return Err(Error::InvalidArgument(format!(
            "position {pos} outside 1..={}",
            chain.n()
        )));
    }
    let p00 = expect(chain, pi, |a, b| f64::from(!a.get(pos) && !b.get(pos)))?;
    let p01 = expect(chain, pi, |a, b| f64::from(!a.get(pos) && b.get(pos)))?;
    Ok((p00, p01))
}

/// Probability that both members have the same leading-ones value below `n`.
pub fn equal_lo_mass(chain: &TransitionMatrix, pi: &[f64]) -> Result<f64> {
    let n = chain.n();
    expect(chain, pi, |a, b| {
        f64::from(a.leading_ones() == b.leading_ones() && a.leading_ones() < n)
    })
}

/// `E[N01 / (N01 + N00)]`, counting `0/0` as 1.
pub fn n01_fraction(chain: &TransitionMatrix, pi: &[f64]) -> Result<f64> {
    let n = chain.n();
    expect(chain, pi, |a, b| {
        let n01 = (1..=n).filter(|&q| !a.get(q) && b.get(q)).count();
        let n00 = (1..=n).filter(|&q| !a.get(q) && !b.get(q)).count();
        if n01 + n00 == 0 {
            1.0
        } else {
            n01 as f64 / (n01 + n00) as f64
        }
    })
}
