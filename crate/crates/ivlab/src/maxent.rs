//! Binomial reference distributions and the entropy comparison.
//!
//! Scaled cubes realize binomial index distributions, so every mean value
//! `d` in `[0, n)` is hit by the cube at scale `s = d / (n - d)`.
//! [`maxent_check`] compares a sequence's intrinsic entropy against the
//! binomial with the same mean and against the symmetric `Bin(1/2, n)`,
//! reporting both gaps. The comparison is evaluated, not assumed: the
//! resulting checks carry the actual numbers, and the built-in corpus shows
//! that ball sequences exceed their matched binomial entropy (see the
//! repository README for the numbers).

use crate::exact::{binomial, IVSequence};
use crate::ivstats;
use crate::{Check, Error, Result};

/// Binomial distribution on `{0..n}` with success probability `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialDist {
    pub n: usize,
    pub p: f64,
    pub probs: Vec<f64>,
}

/// Construct `Bin(p, n)`: `probs[j] = C(n,j) p^j (1-p)^{n-j}`.
pub fn binomial_dist(n: usize, p: f64) -> Result<BinomialDist> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "binomial parameter must lie in [0,1], got {p}"
        )));
    }
    let probs = (0..=n)
        .map(|j| binomial(n, j) * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32))
        .collect();
    Ok(BinomialDist { n, p, probs })
}

/// Scale factor of the cube whose central intrinsic volume is `d`:
/// `s = d / (n - d)`, defined for `0 <= d < n`.
pub fn s_for_target(d: f64, n: usize) -> Result<f64> {
    if !(d >= 0.0 && d < n as f64) {
        return Err(Error::InvalidInput(format!(
            "target mean must satisfy 0 <= d < n = {n}, got {d}"
        )));
    }
    Ok(d / (n as f64 - d))
}

/// Shannon entropy of `Bin(p, n)` in nats, by direct summation with the
/// `0 ln 0 = 0` convention.
pub fn binomial_entropy(n: usize, p: f64) -> Result<f64> {
    let dist = binomial_dist(n, p)?;
    Ok(dist
        .probs
        .iter()
        .map(|&q| if q > 0.0 { -q * q.ln() } else { 0.0 })
        .sum())
}

/// Outcome of the entropy comparison for one sequence.
///
/// `gap_matched = Ent[Bin(delta/n, n)] - IntEnt` and
/// `gap_uniform = Ent[Bin(1/2, n)] - IntEnt`; nonnegative gaps mean the
/// binomial dominates. `checks` holds the two dominance comparisons at
/// additive slack 1e-12 plus a re-run of the ULC verification.
#[derive(Debug, Clone)]
pub struct MaxentReport {
    pub n: usize,
    pub delta: f64,
    pub p: f64,
    pub intrinsic_entropy: f64,
    pub matched_entropy: f64,
    pub uniform_entropy: f64,
    pub gap_matched: f64,
    pub gap_uniform: f64,
    pub checks: Vec<Check>,
}

/// Compare a sequence's entropy to its matched binomial and to `Bin(1/2, n)`.
pub fn maxent_check(a: &IVSequence) -> Result<MaxentReport> {
    let d = ivstats::normalize(a)?;
    let n = a.n();
    let p = d.mean / n as f64;
    let matched_entropy = binomial_entropy(n, p)?;
    let uniform_entropy = binomial_entropy(n, 0.5)?;
    let mut checks = vec![
        Check::le(
            "entropy_le_matched_binomial",
            d.entropy,
            matched_entropy,
            1e-12,
        ),
        Check::le(
            "entropy_le_uniform_binomial",
            d.entropy,
            uniform_entropy,
            1e-12,
        ),
    ];
    checks.extend(ivstats::ulc_check(a, 1e-9));
    Ok(MaxentReport {
        n,
        delta: d.mean,
        p,
        intrinsic_entropy: d.entropy,
        matched_entropy,
        uniform_entropy,
        gap_matched: matched_entropy - d.entropy,
        gap_uniform: uniform_entropy - d.entropy,
        checks,
    })
}
