//! Numeric values of the runtime bounds for the two-individual EAs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::closed_form::{ref_dcfht_leadingones, ref_dcfht_onemax};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    /// (2+2)-EA on LeadingOnes, one-point or uniform crossover: upper bound.
    T2,
    /// (2+2)-EA on LeadingOnes, one-point crossover: lower bound.
    T3,
    /// (2+2)-EA on LeadingOnes, uniform crossover: lower bound.
    T4,
    /// (2+2)-EA on OneMax: upper bound.
    T5,
    /// (2+2)-EA on OneMax, uniform crossover: lower bound.
    T6,
    /// (2:2)-EA on LeadingOnes: lower bound on the crossover slowdown.
    T7Gap,
    /// (2:2)-EA on LeadingOnes: cap on the slowdown factor.
    T7Ratio,
    /// (2:2)-EA on OneMax: lower bound on the crossover slowdown.
    T8Gap,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7Gap,
        TheoremId::T7Ratio,
        TheoremId::T8Gap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T2 => "t2",
            TheoremId::T3 => "t3",
            TheoremId::T4 => "t4",
            TheoremId::T5 => "t5",
            TheoremId::T6 => "t6",
            TheoremId::T7Gap => "t7gap",
            TheoremId::T7Ratio => "t7ratio",
            TheoremId::T8Gap => "t8gap",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem {s:?}")))
    }
}

/// A bound, optionally compared against a measured or exact quantity.
///
/// For `T2`..`T6` the quantity is the expected runtime. For the gap entries
/// it is `E[crossover] - E[mutation]`, and for `T7Ratio` the ratio
/// `E[crossover] / E[mutation]`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub pc: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub compared: Option<f64>,
    pub verdict: Option<bool>,
}

impl BoundReport {
    /// Records `value` and whether it lies within the bounds (`tol` slack).
    pub fn compare(mut self, value: f64, tol: f64) -> Self {
        let above = self.lower.is_none_or(|l| value >= l - tol);
        let below = self.upper.is_none_or(|u| value <= u + tol);
        self.compared = Some(value);
        self.verdict = Some(above && below);
        self
    }
}

/// Evaluates the bound of `theorem` at `(n, pc)`.
pub fn theorem_bound(theorem: TheoremId, n: usize, pc: f64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&pc) {
        return Err(Error::InvalidArgument(format!("p_c = {pc} outside [0, 1]")));
    }
    let needs_q = matches!(
        theorem,
        TheoremId::T2 | TheoremId::T5 | TheoremId::T7Gap | TheoremId::T7Ratio | TheoremId::T8Gap
    );
    if needs_q && pc == 1.0 {
        return Err(Error::DivisionByZero(format!(
            "{theorem} divides by 1 - p_c"
        )));
    }
    if matches!(
        theorem,
        TheoremId::T7Gap | TheoremId::T7Ratio | TheoremId::T8Gap
    ) && n < 2
    {
        return Err(Error::InvalidArgument(format!("{theorem} needs n >= 2")));
    }
    let nf = n as f64;
    let q = 1.0 - pc;
    let e = std::f64::consts::E;
    let (lower, upper) = match theorem {
        TheoremId::T2 => (None, Some(e / q * ref_dcfht_leadingones(n))),
        TheoremId::T3 => (Some(ref_dcfht_leadingones(n) / (5.0 - 2.0 * pc)), None),
        TheoremId::T4 | TheoremId::T6 => (Some(ref_dcfht_leadingones(n) / (2.0 * nf - 1.0)), None),
        TheoremId::T5 => (None, Some(e / q * ref_dcfht_onemax(n))),
        TheoremId::T7Gap => {
            let c = 1.0 / 3.0 - 1.0 / (3.0 * 4f64.powi(n as i32));
            (Some(pc * nf * nf / (q * (2.0 * nf - 1.0)) * c), None)
        }
        TheoremId::T7Ratio => (None, Some(1.0 / q)),
        TheoremId::T8Gap => (Some(nf * pc / (2.0 * q)), None),
    };
    Ok(BoundReport {
        theorem,
        n,
        pc,
        lower,
        upper,
        compared: None,
        verdict: None,
    })
}
