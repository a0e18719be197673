use super::matrix::TransitionMatrix;
use crate::error::{Error, Result};

/// Accepted deviation of an input distribution's total mass from one.
pub const MASS_TOL: f64 = 1e-12;

/// Checks that `pi` is a probability vector over the chain's states.
pub fn check_distribution(chain: &TransitionMatrix, pi: &[f64]) -> Result<()> {
    if pi.len() != chain.len() {
        return Err(Error::InvalidDistribution(format!(
            "{} entries for {} states",
            pi.len(),
            chain.len()
        )));
    }
    if let Some(i) = pi.iter().position(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "entry {i} is {}",
            pi[i]
        )));
    }
    let total: f64 = pi.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::InvalidDistribution(format!("total mass {total}")));
    }
    Ok(())
}

/// One step `pi' = pi P`.
pub fn step(chain: &TransitionMatrix, pi: &[f64]) -> Vec<f64> {
    let mut next = vec![0.0; pi.len()];
    for (i, &m) in pi.iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        let (cols, vals) = chain.row(i);
        for (&j, &p) in cols.iter().zip(vals) {
            next[j as usize] += m * p;
        }
    }
    next
}

/// Distribution after `steps` transitions from `pi`.
pub fn evolve(chain: &TransitionMatrix, pi: &[f64], steps: usize) -> Result<Vec<f64>> {
    check_distribution(chain, pi)?;
    let mut cur = pi.to_vec();
    for _ in 0..steps {
        cur = step(chain, &cur);
    }
    Ok(cur)
}

/// Distributions `pi_0, ..., pi_steps`.
pub fn trajectory(chain: &TransitionMatrix, pi: &[f64], steps: usize) -> Result<Vec<Vec<f64>>> {
    check_distribution(chain, pi)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(pi.to_vec());
    for t in 0..steps {
        let next = step(chain, &out[t]);
        out.push(next);
    }
    Ok(out)
}

/// Probability mass on optimal states.
pub fn optimal_mass(chain: &TransitionMatrix, pi: &[f64]) -> f64 {
    let space = chain.space();
    pi.iter()
        .enumerate()
        .filter(|(i, _)| space.is_optimal(*i))
        .map(|(_, p)| p)
        .sum()
}
