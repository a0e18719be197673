use super::estimate::EfhtEstimate;
use crate::error::{Error, Result};

fn check_pc(pc: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&pc) {
        return Err(Error::InvalidArgument(format!("p_c = {pc} outside [0, 1]")));
    }
    Ok(())
}

/// `(E_cross - E_mut) / n * (1 - p_c) / p_c`.
pub fn gap_statistic(efht_cross: f64, efht_mut: f64, n: usize, pc: f64) -> Result<f64> {
    check_pc(pc)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if pc == 0.0 {
        return Err(Error::DivisionByZero("gap statistic at p_c = 0".into()));
    }
    Ok((efht_cross - efht_mut) / n as f64 * (1.0 - pc) / pc)
}

/// `E_cross / E_mut * (1 - p_c)`.
pub fn ratio_statistic(efht_cross: f64, efht_mut: f64, pc: f64) -> Result<f64> {
    check_pc(pc)?;
    if efht_mut == 0.0 {
        return Err(Error::DivisionByZero(
            "ratio statistic with zero baseline".into(),
        ));
    }
    Ok(efht_cross / efht_mut * (1.0 - pc))
}

/// Gap statistic of two estimates with its propagated standard error.
pub fn gap_with_stderr(cross: &EfhtEstimate, base: &EfhtEstimate, pc: f64) -> Result<(f64, f64)> {
    let value = gap_statistic(cross.mean, base.mean, cross.n, pc)?;
    let scale = (1.0 - pc) / pc / cross.n as f64;
    Ok((value, scale * cross.stderr.hypot(base.stderr)))
}

/// Ratio statistic of two estimates with a first-order standard error.
pub fn ratio_with_stderr(cross: &EfhtEstimate, base: &EfhtEstimate, pc: f64) -> Result<(f64, f64)> {
    let value = ratio_statistic(cross.mean, base.mean, pc)?;
    let rel_c = if cross.mean > 0.0 {
        cross.stderr / cross.mean
    } else {
        0.0
    };
    let rel_b = base.stderr / base.mean;
    Ok((value, value.abs() * rel_c.hypot(rel_b)))
}
