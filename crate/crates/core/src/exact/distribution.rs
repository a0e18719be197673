//! Closed forms for the (2:2)-EA with one-bit mutation and one-bit
//! crossover: per-position bit-pair marginals and two derived bounds.

use crate::error::{Error, Result};

fn check_pc(pc: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&pc) {
        return Err(Error::InvalidArgument(format!("p_c = {pc} outside [0, 1]")));
    }
    Ok(())
}

/// Distance below which `pc` is treated as the removable singularity
/// `(n-1)/(2n-1)` of the generic `p01` formula.
const SINGULAR_TOL: f64 = 1e-12;

/// Probability that, at a fixed position, both members carry 0 (`p00`) and
/// that the first carries 0 while the second carries 1 (`p01`) after `t`
/// steps from a uniform start.
pub fn pair_marginals(n: usize, pc: f64, t: u32) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidArgument("pair marginals need n >= 2".into()));
    }
    check_pc(pc)?;
    let nf = n as f64;
    let q = 1.0 - pc;
    let base = 1.0 - 2.0 * q / nf + q / (nf * nf);
    let keep = 1.0 - 1.0 / nf;
    let p00 = 0.25 * base.powi(t as i32);
    let singular = (nf - 1.0) / (2.0 * nf - 1.0);
    let p01 = if (pc - singular).abs() <= SINGULAR_TOL {
        0.25 * (1.0 + t as f64 / (2.0 * nf - 1.0)) * keep.powi(t as i32)
    } else if q == 0.0 {
        // limit of the generic formula as pc -> 1
        0.25 * keep.powi(t as i32)
    } else {
        let d = 4.0 * (1.0 - 2.0 * nf + nf / q);
        (nf - 1.0) / d * base.powi(t as i32) + (2.0 - 3.0 * nf + nf / q) / d * keep.powi(t as i32)
    };
    Ok((p00, p01))
}

/// Lower bound on the probability that both members have the same number of
/// leading ones and neither is optimal.
pub fn equal_lo_lower_bound(n: usize, pc: f64, t: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_pc(pc)?;
    let nf = n as f64;
    let c = 1.0 / 3.0 - 1.0 / (3.0 * 4f64.powi(n as i32));
    let keep = 1.0 - 1.0 / nf;
    Ok(c * (pc + (1.0 - pc) * keep * keep).powi(t as i32))
}

/// Upper bound on `E[N01 / (N01 + N00)]`, where `N01` counts positions with
/// 0 in the first member and 1 in the second.
pub fn n01_fraction_upper_bound(n: usize, pc: f64, t: u32) -> Result<f64> {
    let (p00, p01) = pair_marginals(n, pc, t)?;
    let nf = n as f64;
    Ok(1.0 - p01 - p00 - (1.0 - (1.0 - pc) / nf).powi(t as i32))
}
