//! Statistics of the normalized intrinsic-volume sequence.
//!
//! Dividing a sequence by its total mass, the Wills functional `W`, turns it
//! into a probability distribution on the indices `{0..n}`. This module
//! computes that distribution and its summary statistics, plus the structural
//! checks a valid sequence must satisfy: ultra-log-concavity, the
//! first-volume domination inequalities, and log-concavity of the
//! quermassintegrals. The generating function `G(t) = sum_j t^j V_j` ties the
//! scaling action to the Wills functional through `G(t) = W(tK)`.

use crate::bodies::BodySpec;
use crate::exact::{self, IVSequence};
use crate::{Check, Error, Result};

/// Normalized sequence with its summary statistics. `probs[j]` is the mass
/// the index variable `Z` puts on `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct IVDistribution {
    pub n: usize,
    pub probs: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub entropy: f64,
}

/// Wills functional: the total intrinsic volume `sum_j V_j`. At least 1 for
/// any body sequence, since `V_0 = 1`.
pub fn wills(a: &IVSequence) -> f64 {
    a.values().iter().sum()
}

/// Normalize the sequence into a probability distribution and populate the
/// statistics fields. Fails only when the total mass is zero or non-finite.
pub fn normalize(a: &IVSequence) -> Result<IVDistribution> {
    let w = wills(a);
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::InvalidInput(format!(
            "sequence mass must be positive and finite to normalize, got {w}"
        )));
    }
    let probs: Vec<f64> = a.values().iter().map(|v| v / w).collect();
    let mean: f64 = probs.iter().enumerate().map(|(j, p)| j as f64 * p).sum();
    let variance: f64 = probs
        .iter()
        .enumerate()
        .map(|(j, p)| (j as f64 - mean) * (j as f64 - mean) * p)
        .sum();
    // convention 0 * ln 0 = 0 covers indices above the intrinsic dimension
    let entropy: f64 = probs
        .iter()
        .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
        .sum();
    Ok(IVDistribution {
        n: a.n(),
        probs,
        mean,
        variance,
        entropy,
    })
}

/// Central intrinsic volume: the mean index `sum_j j * V_j / W`, the centroid
/// of the sequence. Lies in `[0, n)` for every body.
pub fn central_iv(a: &IVSequence) -> f64 {
    let w = wills(a);
    a.values()
        .iter()
        .enumerate()
        .map(|(j, v)| j as f64 * v)
        .sum::<f64>()
        / w
}

/// Central intrinsic volume straight from the body. Interval products use
/// the closed form `sum_i s_i / (1 + s_i)`, which never forms the (possibly
/// huge) Wills functional; other bodies fall back to the sequence path.
pub fn central_iv_of(body: &BodySpec) -> Result<f64> {
    body.validate()?;
    if let Some((_, lengths)) = body.as_interval_product() {
        return Ok(lengths.iter().map(|s| s / (1.0 + s)).sum());
    }
    Ok(central_iv(&exact::sequence_of(body)?))
}

/// Variance of the index variable `Z`.
pub fn variance(a: &IVSequence) -> f64 {
    normalize(a).map(|d| d.variance).unwrap_or(f64::NAN)
}

/// Shannon entropy of `Z` in nats.
pub fn intrinsic_entropy(a: &IVSequence) -> f64 {
    normalize(a).map(|d| d.entropy).unwrap_or(f64::NAN)
}

/// Ultra-log-concavity: `j * V_j^2 >= (j+1) * V_{j+1} * V_{j-1}` for
/// `j = 1..n-1`, checked with additive slack `rel_tol * max(1, j * V_j^2)`.
pub fn ulc_check(a: &IVSequence, rel_tol: f64) -> Vec<Check> {
    let v = a.values();
    (1..a.n())
        .map(|j| {
            let lhs = (j + 1) as f64 * v[j + 1] * v[j - 1];
            let rhs = j as f64 * v[j] * v[j];
            Check::le(format!("ulc[{j}]"), lhs, rhs, rel_tol)
        })
        .collect()
}

/// First-volume domination: `V_j <= V_1^j / j!` for every `j`, and
/// `W <= exp(V_1)`. Both families at relative tolerance 1e-9.
pub fn chevet_mcmullen_check(a: &IVSequence) -> Vec<Check> {
    let v1 = a.get(1);
    let mut checks = Vec::with_capacity(a.n() + 1);
    let mut term = 1.0; // V_1^j / j!, built iteratively so V_1 = 0 stays exact
    for (j, &vj) in a.values().iter().enumerate() {
        if j > 0 {
            term *= v1 / j as f64;
        }
        checks.push(Check::le(format!("v{j}_le_v1_pow"), vj, term, 1e-9));
    }
    checks.push(Check::le("wills_le_exp_v1", wills(a), v1.exp(), 1e-9));
    checks
}

/// Quermassintegrals in ambient dimension `n`:
/// `W_j = kappa_j * V_{n-j} / C(n,j)` for `j = 0..n`. `W_0` is the ordinary
/// volume and `W_n = kappa_n`.
pub fn quermassintegrals(a: &IVSequence) -> Vec<f64> {
    let n = a.n();
    (0..=n)
        .map(|j| exact::kappa(j) * a.get(n - j) / exact::binomial(n, j))
        .collect()
}

/// Generating function `G(t) = sum_j t^j V_j` at `t > 0`. Ascending
/// accumulation, so it matches `wills(scale_sequence(a, t))` operation for
/// operation.
pub fn gf_eval(a: &IVSequence, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidInput(format!(
            "generating-function argument must be positive and finite, got {t}"
        )));
    }
    let mut pow = 1.0;
    Ok(a.values()
        .iter()
        .map(|&v| {
            let term = pow * v;
            pow *= t;
            term
        })
        .sum())
}

/// `G'(1) / G(1)`, which equals the central intrinsic volume.
pub fn gf_log_derivative_at_1(a: &IVSequence) -> f64 {
    central_iv(a)
}
