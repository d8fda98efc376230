//! Exact intrinsic-volume sequences.
//!
//! Every [`BodySpec`](crate::bodies::BodySpec) has a closed-form sequence:
//! balls via the kappa-ratio formula, boxes via elementary symmetric
//! polynomials, and composites by generating-function convolution, scaling,
//! or zero padding. [`sequence_of`] dispatches over the body structure.
//!
//! Volumes of unit balls are exposed both in linear scale ([`kappa`]) and in
//! log scale ([`ln_kappa`]); ratios such as `kappa(n)/kappa(n-j)` should be
//! formed in log scale once `n` runs past a few hundred, because `kappa(n)`
//! underflows long before the ratio degenerates.

use std::f64::consts::PI;

use crate::bodies::BodySpec;
use crate::{Error, Result};

/// Intrinsic-volume sequence `V_0..V_n` of a body in ambient dimension `n`.
///
/// Entries are nonnegative and entries above the intrinsic dimension are
/// zero. The length is tied to the ambient dimension, not the intrinsic one:
/// a point in `R^3` carries the sequence `(1, 0, 0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IVSequence {
    values: Vec<f64>,
}

impl IVSequence {
    /// Validating constructor: nonempty, all entries finite and nonnegative.
    pub fn new(values: Vec<f64>) -> Result<IVSequence> {
        if values.is_empty() {
            return Err(Error::InvalidInput(
                "an intrinsic-volume sequence needs at least the V_0 entry".into(),
            ));
        }
        for (j, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "V_{j} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(IVSequence { values })
    }

    /// Ambient dimension `n`; the sequence has `n + 1` entries.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `V_j`, with zero for indices beyond the ambient dimension.
    pub fn get(&self, j: usize) -> f64 {
        self.values.get(j).copied().unwrap_or(0.0)
    }
}

/// Volume of the unit ball in `R^n`, by the two-step recurrence
/// `kappa_n = kappa_{n-2} * 2*pi / n` from `kappa_0 = 1`, `kappa_1 = 2`.
pub fn kappa(n: usize) -> f64 {
    let mut k = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut m = n % 2;
    while m < n {
        m += 2;
        k *= 2.0 * PI / m as f64;
    }
    k
}

/// `ln(kappa(n))`, stable for all `n` (the linear value underflows near
/// `n = 450`).
pub fn ln_kappa(n: usize) -> f64 {
    let mut k = if n.is_multiple_of(2) { 0.0 } else { std::f64::consts::LN_2 };
    let mut m = n % 2;
    while m < n {
        m += 2;
        k += (2.0 * PI).ln() - (m as f64).ln();
    }
    k
}

/// Surface area of the unit sphere in `R^n`: `omega_n = n * kappa_n`.
pub fn omega(n: usize) -> f64 {
    n as f64 * kappa(n)
}

/// Binomial coefficient as a float; exact while the value fits in 53 bits.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut res = 1.0f64;
    // after step i the running value is C(n-k+i, i), an integer
    for i in 1..=k {
        res = res * (n - k + i) as f64 / i as f64;
    }
    res
}

/// `ln C(n,k)` by summed log factors; usable far beyond the overflow of the
/// linear coefficient.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    let mut res = 0.0f64;
    for i in 1..=k {
        res += ((n - k + i) as f64).ln() - (i as f64).ln();
    }
    res
}

/// Sequence of the radius-`r` ball in `R^n`:
/// `V_j = C(n,j) * kappa_n / kappa_{n-j} * r^j`, assembled in log scale.
pub fn ball_sequence(n: usize, r: f64) -> Result<IVSequence> {
    if n == 0 {
        return Err(Error::InvalidInput("ball dimension must be >= 1".into()));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "ball radius must be finite and nonnegative, got {r}"
        )));
    }
    let mut values = vec![0.0; n + 1];
    values[0] = 1.0;
    if r > 0.0 {
        let ln_r = r.ln();
        for (j, v) in values.iter_mut().enumerate().skip(1) {
            *v = (ln_binomial(n, j) + ln_kappa(n) - ln_kappa(n - j) + j as f64 * ln_r).exp();
        }
    }
    IVSequence::new(values)
}

/// Sequence of the box with the given side lengths: `V_j` is the `j`th
/// elementary symmetric polynomial, built by ascending convolution of the
/// factors `(1 + s_i * t)`. All-nonnegative arithmetic, no cancellation.
pub fn box_sequence(lengths: &[f64]) -> Result<IVSequence> {
    for &s in lengths {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "box side length must be finite and nonnegative, got {s}"
            )));
        }
    }
    let mut values = Vec::with_capacity(lengths.len() + 1);
    values.push(1.0);
    for &s in lengths {
        values.push(0.0);
        for j in (1..values.len()).rev() {
            values[j] += s * values[j - 1];
        }
    }
    IVSequence::new(values)
}

/// Sequence of an orthogonal product: coefficient convolution of the two
/// generating polynomials. The result lives in dimension `n_a + n_b`.
pub fn product_sequence(a: &IVSequence, b: &IVSequence) -> IVSequence {
    let (av, bv) = (a.values(), b.values());
    let mut values = vec![0.0; av.len() + bv.len() - 1];
    for (i, &x) in av.iter().enumerate() {
        for (j, &y) in bv.iter().enumerate() {
            values[i + j] += x * y;
        }
    }
    IVSequence { values }
}

/// Sequence of `lambda * K`: degree-`j` homogeneity, `V_j -> lambda^j V_j`.
pub fn scale_sequence(a: &IVSequence, lambda: f64) -> Result<IVSequence> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "scale factor must be finite and nonnegative, got {lambda}"
        )));
    }
    let mut pow = 1.0;
    let values = a
        .values()
        .iter()
        .map(|&v| {
            let out = pow * v;
            pow *= lambda;
            out
        })
        .collect();
    Ok(IVSequence { values })
}

/// Sequence of `K x {0}^m`: intrinsic volumes are embedding-invariant, so the
/// values are unchanged and `m` zeros are appended.
pub fn embed_sequence(a: &IVSequence, m: usize) -> IVSequence {
    let mut values = a.values().to_vec();
    values.extend(std::iter::repeat_n(0.0, m));
    IVSequence { values }
}

/// Exact sequence of any body, by structural recursion. Translation is a
/// no-op on the sequence. Errors if some entry overflows f64 range, which
/// very large bodies can do even when the body itself is well formed.
pub fn sequence_of(body: &BodySpec) -> Result<IVSequence> {
    body.validate()?;
    seq_rec(body)
}

fn seq_rec(body: &BodySpec) -> Result<IVSequence> {
    match body {
        BodySpec::Point { dim } => {
            let mut values = vec![0.0; dim + 1];
            values[0] = 1.0;
            Ok(IVSequence { values })
        }
        BodySpec::Ball { dim, radius } => ball_sequence(*dim, *radius),
        BodySpec::Box { lengths } => box_sequence(lengths),
        BodySpec::Product { left, right } => {
            Ok(product_sequence(&seq_rec(left)?, &seq_rec(right)?))
        }
        BodySpec::Scaled { factor, inner } => scale_sequence(&seq_rec(inner)?, *factor),
        BodySpec::Translated { inner, .. } => seq_rec(inner),
        BodySpec::Embedded { inner, extra_dims } => {
            Ok(embed_sequence(&seq_rec(inner)?, *extra_dims))
        }
    }
}
