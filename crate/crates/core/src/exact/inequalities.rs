//! Claimed inequalities on the differences of the CFHT table, checked
//! exhaustively for a given `n`.
//!
//! Two kinds of difference appear. The "step" difference
//! `E(i, i+d) - E(i, i+d-1)` removes one zero from the worse member, the
//! "diagonal" difference `E(i, i+d) - E(i-1, i+d)` removes one from the
//! better member.

use std::fmt;

use serde::Serialize;

use super::table::{cfht_table, CfhtTable};
use crate::problem::Problem;

/// Slack granted to the non-strict comparisons.
const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InequalityId {
    /// LeadingOnes: step >= n / 2^(d+2), i >= 1, d >= 1.
    LoStepLower,
    /// LeadingOnes: diagonal <= n - (3n-1) / 2^(d+3), i >= 1, d >= 0.
    LoDiagUpper,
    /// LeadingOnes: step < n/2, i >= 0, d >= 1.
    LoStepBelowHalf,
    /// LeadingOnes: diagonal > n/2, i >= 1, d >= 0.
    LoDiagAboveHalf,
    /// OneMax: step > n / (2^(d+1) (i+d)), i >= 1, d >= 1.
    OmStepLower,
    /// OneMax: diagonal < (1 - 3/2^(d+3)) n/i + 1/2^(d+3), i >= 1, d >= 0.
    OmDiagUpper,
    /// OneMax: step < n / (2 (i+d)), i >= 0, d >= 1.
    OmStepUpper,
    /// OneMax: diagonal > n / (2i), i >= 1, d >= 0.
    OmDiagLower,
    /// OneMax: step > 1, i >= 1, d >= 1.
    OmStepAboveOne,
    /// OneMax: diagonal < n/i, i >= 1, d >= 0.
    OmDiagBelowNOverI,
}

impl InequalityId {
    pub fn for_problem(problem: Problem) -> &'static [InequalityId] {
        use InequalityId::*;
        match problem {
            Problem::LeadingOnes => &[LoStepLower, LoDiagUpper, LoStepBelowHalf, LoDiagAboveHalf],
            Problem::OneMax => &[
                OmStepLower,
                OmDiagUpper,
                OmStepUpper,
                OmDiagLower,
                OmStepAboveOne,
                OmDiagBelowNOverI,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        use InequalityId::*;
        match self {
            LoStepLower => "lo-step-lower",
            LoDiagUpper => "lo-diag-upper",
            LoStepBelowHalf => "lo-step-below-half",
            LoDiagAboveHalf => "lo-diag-above-half",
            OmStepLower => "om-step-lower",
            OmDiagUpper => "om-diag-upper",
            OmStepUpper => "om-step-upper",
            OmDiagLower => "om-diag-lower",
            OmStepAboveOne => "om-step-above-one",
            OmDiagBelowNOverI => "om-diag-below-n-over-i",
        }
    }

    fn is_step(self) -> bool {
        use InequalityId::*;
        matches!(
            self,
            LoStepLower | LoStepBelowHalf | OmStepLower | OmStepUpper | OmStepAboveOne
        )
    }

    fn min_i(self) -> usize {
        use InequalityId::*;
        match self {
            LoStepBelowHalf | OmStepUpper => 0,
            _ => 1,
        }
    }

    /// Bound and the direction: `true` when `lhs` must exceed the bound.
    fn bound(self, n: f64, i: f64, d: i32) -> (f64, Cmp) {
        use InequalityId::*;
        let p2 = |k: i32| 2f64.powi(k);
        match self {
            LoStepLower => (n / p2(d + 2), Cmp::Ge),
            LoDiagUpper => (n - (3.0 * n - 1.0) / p2(d + 3), Cmp::Le),
            LoStepBelowHalf => (n / 2.0, Cmp::Lt),
            LoDiagAboveHalf => (n / 2.0, Cmp::Gt),
            OmStepLower => (n / (p2(d + 1) * (i + d as f64)), Cmp::Gt),
            OmDiagUpper => ((1.0 - 3.0 / p2(d + 3)) * n / i + 1.0 / p2(d + 3), Cmp::Lt),
            OmStepUpper => (n / (2.0 * (i + d as f64)), Cmp::Lt),
            OmDiagLower => (n / (2.0 * i), Cmp::Gt),
            OmStepAboveOne => (1.0, Cmp::Gt),
            OmDiagBelowNOverI => (n / i, Cmp::Lt),
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
enum Cmp {
    Ge,
    Le,
    Gt,
    Lt,
}

impl Cmp {
    fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Cmp::Ge => lhs >= rhs - SLACK,
            Cmp::Le => lhs <= rhs + SLACK,
            Cmp::Gt => lhs > rhs,
            Cmp::Lt => lhs < rhs,
        }
    }
}

/// One failing instance of a claimed inequality.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityViolation {
    pub id: InequalityId,
    pub i: usize,
    pub delta: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// Difference used by inequality `id` at `(i, delta)`.
fn difference(t: &CfhtTable, id: InequalityId, i: usize, delta: usize) -> f64 {
    if id.is_step() {
        t.get(i, i + delta) - t.get(i, i + delta - 1)
    } else {
        t.get(i, i + delta) - t.get(i - 1, i + delta)
    }
}

/// Tests every claimed inequality for `problem` over its whole index range.
pub fn check_cfht_inequalities(problem: Problem, n: usize) -> Vec<InequalityViolation> {
    assert!(n >= 2, "n must be at least 2");
    let t = cfht_table(problem, n);
    check_table(&t)
}

pub fn check_table(t: &CfhtTable) -> Vec<InequalityViolation> {
    let n = t.n;
    let mut out = Vec::new();
    for &id in InequalityId::for_problem(t.problem) {
        let min_delta = if id.is_step() { 1 } else { 0 };
        for i in id.min_i()..=n {
            for delta in min_delta..=(n - i) {
                let lhs = difference(t, id, i, delta);
                let (rhs, cmp) = id.bound(n as f64, i as f64, delta as i32);
                if !cmp.holds(lhs, rhs) {
                    out.push(InequalityViolation {
                        id,
                        i,
                        delta,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    out
}
