//! Plain-text sparse triplet format.
//!
//! The first line is `n arity optimal_count`, every following line is
//! `from to probability`.

use std::io::{BufRead, Write};

use super::matrix::TransitionMatrix;
use crate::error::{Error, Result};

/// A chain read back from the triplet format.
#[derive(Clone, Debug, PartialEq)]
pub struct Triplets {
    pub n: usize,
    pub arity: usize,
    pub optimal_count: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

pub fn write_triplets<W: Write>(chain: &TransitionMatrix, mut out: W) -> std::io::Result<()> {
    let space = chain.space();
    writeln!(
        out,
        "{} {} {}",
        space.n(),
        space.arity(),
        space.optimal_count()
    )?;
    for i in 0..chain.len() {
        let (cols, vals) = chain.row(i);
        for (&j, &p) in cols.iter().zip(vals) {
            writeln!(out, "{i} {j} {p}")?;
        }
    }
    out.flush()
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("triplet line {line}: {msg}"))
}

pub fn read_triplets<R: BufRead>(input: R) -> Result<Triplets> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => l.map_err(|e| parse_err(1, e))?,
        None => return Err(parse_err(1, "missing header")),
    };
    let head: Vec<usize> = header
        .split_whitespace()
        .map(|w| w.parse().map_err(|e| parse_err(1, e)))
        .collect::<Result<_>>()?;
    let [n, arity, optimal_count] = head[..] else {
        return Err(parse_err(1, "expected `n arity optimal_count`"));
    };
    let mut entries = Vec::new();
    for (k, line) in lines {
        let line = line.map_err(|e| parse_err(k + 1, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(k + 1, "expected three fields"));
        }
        let i = f[0].parse().map_err(|e| parse_err(k + 1, e))?;
        let j = f[1].parse().map_err(|e| parse_err(k + 1, e))?;
        let p = f[2].parse().map_err(|e| parse_err(k + 1, e))?;
        entries.push((i, j, p));
    }
    Ok(Triplets {
        n,
        arity,
        optimal_count,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_chain;
    use crate::config::{Algorithm, EaConfig};
    use crate::operators::{CrossoverKind, MutationKind};
    use crate::problem::Problem;

    #[test]
    fn round_trip() {
        let c = EaConfig::new(
            Algorithm::TwoColonTwo,
            Problem::LeadingOnes,
            MutationKind::OneBit,
        )
        .with_crossover(CrossoverKind::OneBit, 0.3);
        let m = build_chain(&c, 3).unwrap();
        let mut buf = Vec::new();
        write_triplets(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("3 2 15\n"));
        let t = read_triplets(&buf[..]).unwrap();
        assert_eq!((t.n, t.arity, t.optimal_count), (3, 2, 15));
        assert_eq!(t.entries.len(), m.nnz());
        for &(i, j, p) in &t.entries {
            assert_eq!(m.prob(i, j), p);
        }
    }

    #[test]
    fn malformed_input() {
        assert!(read_triplets(&b""[..]).is_err());
        assert!(read_triplets(&b"3 2\n"[..]).is_err());
        assert!(read_triplets(&b"1 1 1\n0 1\n"[..]).is_err());
    }
}
