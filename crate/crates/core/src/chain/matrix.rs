use rayon::prelude::*;

use super::space::{StateSpace, DEFAULT_STATE_CAP};
use crate::config::{EaConfig, Reproduction};
use crate::ea::{reproduction_outcomes, select};
use crate::error::{Error, Result};
use crate::operators::{CrossoverKind, MutationKind};

/// Largest `n` for operators whose outcome count grows like `2^n`.
pub const MAX_N_EXPONENTIAL_OPERATORS: usize = 6;

/// Sparse row-stochastic transition matrix of an EA.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    space: StateSpace,
    config: EaConfig,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl TransitionMatrix {
    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn config(&self) -> &EaConfig {
        &self.config
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Column indices and probabilities of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> (&[u32], &[f64]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&(j as u32)) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// Largest deviation of a row sum from one.
    pub fn max_row_sum_error(&self) -> f64 {
        (0..self.len())
            .map(|i| (self.row(i).1.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// True when no optimal state has an edge to a non-optimal one.
    pub fn optimum_is_closed(&self) -> bool {
        (0..self.len())
            .filter(|&i| self.space.is_optimal(i))
            .all(|i| {
                let (cols, vals) = self.row(i);
                cols.iter()
                    .zip(vals)
                    .all(|(&j, &p)| p == 0.0 || self.space.is_optimal(j as usize))
            })
    }

    pub(crate) fn from_rows(
        space: StateSpace,
        config: EaConfig,
        rows: Vec<Vec<(u32, f64)>>,
    ) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        row_ptr.push(0);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        for r in rows {
            for (c, v) in r {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self {
            space,
            config,
            row_ptr,
            cols,
            vals,
        }
    }
}

fn uses_exponential_operator(config: &EaConfig) -> bool {
    let cross = matches!(
        config.reproduction,
        Reproduction::Crossover {
            kind: CrossoverKind::Uniform,
            ..
        }
    );
    config.mutation == MutationKind::Bitwise || cross
}

/// Builds the exact transition matrix by enumerating every reproduction
/// outcome of every state and applying selection.
pub fn build_chain(config: &EaConfig, n: usize) -> Result<TransitionMatrix> {
    build_chain_with_cap(config, n, DEFAULT_STATE_CAP)
}

pub fn build_chain_with_cap(config: &EaConfig, n: usize, cap: u128) -> Result<TransitionMatrix> {
    config.validate(n)?;
    let space = StateSpace::with_cap(n, config.arity(), cap)?;
    if uses_exponential_operator(config) && n > MAX_N_EXPONENTIAL_OPERATORS {
        return Err(Error::EnumerationLimit(format!(
            "bitwise mutation and uniform crossover chains are built only for n <= {MAX_N_EXPONENTIAL_OPERATORS}"
        )));
    }
    let rows = (0..space.len())
        .into_par_iter()
        .map(|i| build_row(config, &space, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionMatrix::from_rows(space, *config, rows))
}

fn build_row(config: &EaConfig, space: &StateSpace, i: usize) -> Result<Vec<(u32, f64)>> {
    let state = space.state(i);
    let mut entries: Vec<(u32, f64)> = reproduction_outcomes(config, &state)?
        .into_iter()
        .map(|(p, off)| (space.index_of(&select(config, &state, off)) as u32, p))
        .collect();
    entries.sort_by_key(|e| e.0);
    let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
    for (c, p) in entries {
        match merged.last_mut() {
            Some(last) if last.0 == c => last.1 += p,
            _ => merged.push((c, p)),
        }
    }
    merged.retain(|e| e.1 > 0.0);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Algorithm;
    use crate::ea::EaState;
    use crate::problem::Problem;
    use crate::strategy::Strategy;

    fn bs(s: &str) -> crate::BitString {
        s.parse().unwrap()
    }

    #[test]
    fn single_bit_onemax() {
        let c = EaConfig::new(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit);
        let m = build_chain(&c, 1).unwrap();
        assert_eq!(m.prob(0, 1), 1.0);
        assert_eq!(m.prob(1, 1), 1.0);
    }

    #[test]
    fn rows_are_stochastic_and_optimum_closed() {
        let base = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        );
        let configs = [
            base,
            base.with_crossover(CrossoverKind::OneBit, 0.5),
            base.with_strategy(Strategy::Mr2),
            EaConfig::new(
                Algorithm::TwoPlusTwo,
                Problem::OneMax,
                MutationKind::Bitwise,
            )
            .with_crossover(CrossoverKind::Uniform, 0.3),
            EaConfig::new(
                Algorithm::OnePlusOne,
                Problem::LeadingOnes,
                MutationKind::Bitwise,
            ),
        ];
        for c in configs {
            let m = build_chain(&c, 3).unwrap();
            assert!(m.max_row_sum_error() < 1e-12, "{}", c.fingerprint());
            assert!(m.optimum_is_closed(), "{}", c.fingerprint());
            assert!(m.vals.iter().all(|&p| p > 0.0 && p <= 1.0 + 1e-15));
        }
    }

    #[test]
    fn mutation_only_leadingones_rows() {
        let n = 4usize;
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        );
        let m = build_chain(&c, n).unwrap();
        let x = EaState::pair(bs("1010"), bs("0110")).unwrap();
        let y = EaState::pair(bs("1110"), bs("0110")).unwrap();
        let (ix, iy) = (m.space().index_of(&x), m.space().index_of(&y));
        let nf = n as f64;
        assert!((m.prob(ix, iy) - (nf - 1.0) / (nf * nf)).abs() < 1e-15);
        assert!((m.prob(ix, ix) - (nf - 1.0).powi(2) / (nf * nf)).abs() < 1e-15);
    }

    #[test]
    fn equal_leading_ones_stay_probability_with_crossover() {
        let n = 4usize;
        let pc = 0.3;
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        )
        .with_crossover(CrossoverKind::OneBit, pc);
        let m = build_chain(&c, n).unwrap();
        let x = m
            .space()
            .index_of(&EaState::pair(bs("1001"), bs("1010")).unwrap());
        let nf = n as f64;
        let expect = pc + (1.0 - pc) * (nf - 1.0).powi(2) / (nf * nf);
        assert!((m.prob(x, x) - expect).abs() < 1e-15);
    }

    #[test]
    fn exponential_operators_are_capped() {
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::OneMax,
            MutationKind::Bitwise,
        );
        let err = build_chain(&c, 7).unwrap_err();
        assert!(err.is_size_limit());
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::OneMax,
            MutationKind::OneBit,
        );
        assert!(matches!(build_chain(&c, 11), Err(Error::SizeLimit { .. })));
    }
}
