use crate::error::{Error, Result};

/// `H_k = 1 + 1/2 + ... + 1/k`, with `H_0 = 0`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

fn check_zeros(n: usize, zeros: usize) -> Result<()> {
    if zeros > n {
        return Err(Error::InvalidArgument(format!(
            "zero count {zeros} exceeds n = {n}"
        )));
    }
    Ok(())
}

/// CFHT of the (1+1_>)-EA with one-bit mutation on LeadingOnes from a
/// string with `zeros` zeros: `n * zeros`.
pub fn cfht_strict_opo_leadingones(n: usize, zeros: usize) -> Result<f64> {
    check_zeros(n, zeros)?;
    Ok((n * zeros) as f64)
}

/// CFHT of the (1+1)-EA with one-bit mutation on OneMax from a string with
/// `zeros` zeros: `n * H_zeros`.
pub fn cfht_opo_onemax(n: usize, zeros: usize) -> Result<f64> {
    check_zeros(n, zeros)?;
    Ok(n as f64 * harmonic(zeros))
}

/// Expected hitting time of the LeadingOnes reference chain started from
/// the image of a uniform random pair:
/// `n / 4^n * sum_{j=1..n} (2^n - 2^(j-1))^2`.
pub fn ref_dcfht_leadingones(n: usize) -> f64 {
    let nf = n as f64;
    let sum: f64 = (1..=n)
        .map(|j| {
            let r = 1.0 - 0.5f64.powi((n + 1 - j) as i32);
            r * r
        })
        .sum();
    nf * sum
}

/// `P(Bin(n, 1/2) >= j)` for `j = 0..=n+1`.
fn binomial_survival(n: usize) -> Vec<f64> {
    let mut pmf = Vec::with_capacity(n + 1);
    let mut b = 0.5f64.powi(n as i32);
    for k in 0..=n {
        pmf.push(b);
        b *= (n - k) as f64 / (k + 1) as f64;
    }
    let mut surv = vec![0.0; n + 2];
    for k in (0..=n).rev() {
        surv[k] = surv[k + 1] + pmf[k];
    }
    surv
}

/// Expected hitting time of the OneMax reference chain started from the
/// image of a uniform random pair:
/// `n / 4^n * sum_{j=1..n} (1/j) (sum_{k>=j} C(n,k))^2`.
pub fn ref_dcfht_onemax(n: usize) -> f64 {
    let surv = binomial_survival(n);
    let sum: f64 = (1..=n).map(|j| surv[j] * surv[j] / j as f64).sum();
    n as f64 * sum
}
