//! The estimators: rotation averages, distance integrals, hit-or-miss
//! volumes, and the beta integral.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

use super::{
    estimate_from_stats, haar_rotation, run_chunks, run_stats, zonotope_volume, MCEstimate,
    SampleParams,
};
use crate::bodies::BodySpec;
use crate::exact;
use crate::{Error, Result};

/// Isotropic Gaussian proposal for the distance integrals.
struct GaussianProposal {
    center: Vec<f64>,
    sigma: f64,
    // -(n/2) ln(2 pi sigma^2), the log normalization
    ln_norm: f64,
}

impl GaussianProposal {
    fn new(center: Vec<f64>, sigma: f64) -> Result<GaussianProposal> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidInput(format!(
                "proposal width must be positive and finite, got {sigma}"
            )));
        }
        let n = center.len() as f64;
        let ln_norm = -0.5 * n * (2.0 * PI * sigma * sigma).ln();
        Ok(GaussianProposal { center, sigma, ln_norm })
    }

    fn sample(&self, rng: &mut ChaCha12Rng) -> Vec<f64> {
        self.center
            .iter()
            .map(|c| c + self.sigma * rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    fn ln_density(&self, x: &[f64]) -> f64 {
        let r2: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c) * (a - c))
            .sum();
        self.ln_norm - r2 / (2.0 * self.sigma * self.sigma)
    }
}

/// Shared engine for the integrals `int exp(-lam^2 pi dist^2(x)) dx`.
/// `lam = 1` is the Wills integral. The default proposal width is the
/// enclosing radius plus the larger of 1 and twice the integrand's own
/// Gaussian scale `1/(lam sqrt(2 pi))`; a proposal narrower than that scale
/// would give the weights unbounded variance.
fn distance_integral(
    id: &str,
    body: &BodySpec,
    lam: f64,
    params: &SampleParams,
    sigma: Option<f64>,
) -> Result<MCEstimate> {
    body.validate()?;
    let (center, radius) = body.enclosing_ball();
    let tail_scale = (lam * (2.0 * PI).sqrt()).recip();
    let width = sigma.unwrap_or(radius + (2.0 * tail_scale).max(1.0));
    let proposal = GaussianProposal::new(center, width)?;
    let rate = lam * lam * PI;
    let stats = run_stats(params, |rng| {
        let x = proposal.sample(rng);
        let d2 = body.distance_squared(&x).expect("proposal dim matches body");
        (-rate * d2 - proposal.ln_density(&x)).exp()
    })?;
    Ok(estimate_from_stats(id, stats, params))
}

/// Importance-sampling estimate of the Wills functional
/// `W(K) = int exp(-pi dist^2(x, K)) dx`. Unbiased; the standard error comes
/// from the weight variance.
pub fn wills_estimate(
    body: &BodySpec,
    params: &SampleParams,
    sigma: Option<f64>,
) -> Result<MCEstimate> {
    distance_integral("wills", body, 1.0, params, sigma)
}

/// Estimate of `int exp(-lam^2 pi dist^2) dx`, which equals
/// `lam^{-n} G(lam)` for the generating function `G`. At `lam = 1` this is
/// the Wills integral.
pub fn gf_estimate(
    body: &BodySpec,
    lam: f64,
    params: &SampleParams,
    sigma: Option<f64>,
) -> Result<MCEstimate> {
    if !(lam.is_finite() && lam > 0.0) {
        return Err(Error::InvalidInput(format!(
            "generating-function scale must be positive and finite, got {lam}"
        )));
    }
    distance_integral("gf", body, lam, params, sigma)
}

/// Self-normalized estimates of `E[H]` and `E[H^2]` where `H = pi dist^2`
/// under the body density proportional to `exp(-pi dist^2)`. Ratio
/// estimators; standard errors by the delta method.
pub fn h_moment_estimates(
    body: &BodySpec,
    params: &SampleParams,
    sigma: Option<f64>,
) -> Result<(MCEstimate, MCEstimate)> {
    body.validate()?;
    let (center, radius) = body.enclosing_ball();
    let proposal = GaussianProposal::new(center, sigma.unwrap_or(radius + 1.0))?;
    // power sums: w, wh, wh^2 for the ratios; w^2 h^k for the delta method
    let s = run_chunks::<7, _>(params, |rng, acc| {
        let x = proposal.sample(rng);
        let d2 = body.distance_squared(&x).expect("proposal dim matches body");
        let h = PI * d2;
        let w = (-h - proposal.ln_density(&x)).exp();
        acc[0] += w;
        acc[1] += w * h;
        acc[2] += w * h * h;
        acc[3] += w * w;
        acc[4] += w * w * h;
        acc[5] += w * w * h * h;
        acc[6] += w * w * h * h * h * h;
    })?;
    let [s0, s1, s2, q0, q1, q2, q4] = s;
    let eh = s1 / s0;
    let eh_se = (q2 - 2.0 * eh * q1 + eh * eh * q0).max(0.0).sqrt() / s0;
    let eh2 = s2 / s0;
    let eh2_se = (q4 - 2.0 * eh2 * q2 + eh2 * eh2 * q0).max(0.0).sqrt() / s0;
    let make = |id: &str, value: f64, std_error: f64| MCEstimate {
        estimator_id: id.into(),
        value,
        std_error,
        samples: params.samples,
        seed: params.seed,
    };
    Ok((make("eh", eh, eh_se), make("eh2", eh2, eh2_se)))
}

/// Bodies the projection-average estimator handles exactly: boxes (zonotope
/// volumes) and balls (rotation-free), possibly scaled and translated.
enum KubotaBody {
    Box(Vec<f64>),
    Ball { dim: usize, radius: f64 },
}

fn kubota_body(body: &BodySpec) -> Result<KubotaBody> {
    match body {
        BodySpec::Box { lengths } => Ok(KubotaBody::Box(lengths.clone())),
        BodySpec::Ball { dim, radius } => Ok(KubotaBody::Ball {
            dim: *dim,
            radius: *radius,
        }),
        BodySpec::Scaled { factor, inner } => match kubota_body(inner)? {
            KubotaBody::Box(lengths) => {
                Ok(KubotaBody::Box(lengths.iter().map(|s| s * factor).collect()))
            }
            KubotaBody::Ball { dim, radius } => Ok(KubotaBody::Ball {
                dim,
                radius: radius * factor,
            }),
        },
        BodySpec::Translated { inner, .. } => kubota_body(inner),
        _ => Err(Error::Unsupported {
            estimator: "kubota_estimate",
            reason: "exact projection volumes exist only for boxes and balls \
                     (possibly scaled or translated)"
                .into(),
        }),
    }
}

/// Projection-average estimate of `V_j`: the mean over random rotations of
/// the `j`-volume of the projection onto the first `j` coordinates, times
/// `C(n,j) kappa_n / (kappa_j kappa_{n-j})`.
pub fn kubota_estimate(body: &BodySpec, j: usize, params: &SampleParams) -> Result<MCEstimate> {
    kubota_estimate_with(body, j, params, None)
}

/// [`kubota_estimate`] with an optional fixed rotation folded into every
/// Haar draw. Rotation invariance of the estimand makes the extra rotation
/// statistically invisible; the verification suite exercises exactly that.
pub fn kubota_estimate_with(
    body: &BodySpec,
    j: usize,
    params: &SampleParams,
    pre_rotation: Option<&DMatrix<f64>>,
) -> Result<MCEstimate> {
    body.validate()?;
    let n = body.ambient_dim();
    if j > n {
        return Err(Error::InvalidInput(format!(
            "projection order must satisfy 0 <= j <= n = {n}, got {j}"
        )));
    }
    if let Some(r0) = pre_rotation {
        if r0.nrows() != n || r0.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r0.nrows(),
            });
        }
    }
    let id = format!("kubota[{j}]");
    let exact_trivial = |value: f64| MCEstimate {
        estimator_id: id.clone(),
        value,
        std_error: 0.0,
        samples: params.samples,
        seed: params.seed,
    };
    params.validate()?;
    if j == 0 {
        // every projection has 0-volume 1; the average is exact
        return Ok(exact_trivial(1.0));
    }
    match kubota_body(body)? {
        KubotaBody::Ball { dim, radius } => {
            // projections of a ball are j-balls of the same radius: the
            // per-rotation volume is constant, so the average is exact
            Ok(exact_trivial(exact::ball_sequence(dim, radius)?.values()[j]))
        }
        KubotaBody::Box(lengths) => {
            if n > 12 {
                return Err(Error::Unsupported {
                    estimator: "kubota_estimate",
                    reason: format!(
                        "subset-determinant volume is exponential in the dimension; \
                         boxes are capped at n <= 12, got {n}"
                    ),
                });
            }
            let ln_prefactor = exact::ln_binomial(n, j) + exact::ln_kappa(n)
                - exact::ln_kappa(j)
                - exact::ln_kappa(n - j);
            let prefactor = ln_prefactor.exp();
            let stats = run_stats(params, |rng| {
                let q = haar_rotation(n, rng).expect("n >= 1");
                let rotated = match pre_rotation {
                    Some(r0) => &q * r0,
                    None => q,
                };
                // generator columns: s_i times the first j coordinates of
                // the rotated i-th axis
                let gens =
                    DMatrix::from_fn(j, n, |row, col| lengths[col] * rotated[(row, col)]);
                prefactor * zonotope_volume(&gens)
            })?;
            Ok(estimate_from_stats(id, stats, params))
        }
    }
}

/// Hit-or-miss volume of the parallel body `{x : dist(x, K) <= lam}` against
/// the exact Steiner polynomial `sum_j kappa_{n-j} lam^{n-j} V_j`.
pub fn steiner_check(
    body: &BodySpec,
    lam: f64,
    params: &SampleParams,
) -> Result<(MCEstimate, f64)> {
    if !(lam.is_finite() && lam > 0.0) {
        return Err(Error::InvalidInput(format!(
            "parallel-body radius must be positive and finite, got {lam}"
        )));
    }
    let seq = exact::sequence_of(body)?;
    let n = body.ambient_dim();
    let polynomial_value: f64 = (0..=n)
        .map(|j| exact::kappa(n - j) * lam.powi((n - j) as i32) * seq.values()[j])
        .sum();
    // sampling box: the body box inflated by lam per axis, which covers the
    // parallel body
    let (lo, hi) = body.bounding_box();
    let widths: Vec<f64> = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) + 2.0 * lam)
        .collect();
    let box_volume: f64 = widths.iter().product();
    let lam2 = lam * lam;
    let stats = run_stats(params, |rng| {
        let x: Vec<f64> = lo
            .iter()
            .zip(&widths)
            .map(|(a, w)| a - lam + w * rng.gen::<f64>())
            .collect();
        let hit = body.distance_squared(&x).expect("box dim matches body") <= lam2;
        if hit {
            box_volume
        } else {
            0.0
        }
    })?;
    Ok((
        estimate_from_stats("steiner", stats, params),
        polynomial_value,
    ))
}

/// Estimate of `int (1 + lam dist(x, K))^{-(n+1)} dx` against the exact
/// value `kappa_n lam^{-n} sum_j lam^j V_j(K) / V_j(B_n)`.
///
/// The proposal is the exact solution for a point: direction uniform, radius
/// `r` with density proportional to `r^{n-1} (1 + lam r)^{-(n+1)}`, drawn by
/// inverting `u = lam r / (1 + lam r)`, whose pushforward is `u^n`. The
/// weight is then `kappa_n lam^{-n} ((1 + lam |x - c|) / (1 + lam dist))^{n+1}`,
/// bounded by `(1 + lam R)^{n+1}` for enclosing radius `R`, so the variance
/// is finite for every body. A Gaussian proposal would not work here: the
/// integrand has a polynomial tail.
pub fn beta_integral_check(
    body: &BodySpec,
    lam: f64,
    params: &SampleParams,
) -> Result<(MCEstimate, f64)> {
    if !(lam.is_finite() && lam > 0.0) {
        return Err(Error::InvalidInput(format!(
            "beta-integral scale must be positive and finite, got {lam}"
        )));
    }
    let seq = exact::sequence_of(body)?;
    let n = body.ambient_dim();
    let unit_ball = exact::ball_sequence(n, 1.0)?;
    let exact_value: f64 = exact::kappa(n) * lam.powi(-(n as i32))
        * (0..=n)
            .map(|j| lam.powi(j as i32) * seq.values()[j] / unit_ball.values()[j])
            .sum::<f64>();
    let (center, _) = body.enclosing_ball();
    let scale = exact::kappa(n) * lam.powi(-(n as i32));
    let power = (n + 1) as i32;
    let inv_n = 1.0 / n as f64;
    let stats = run_stats(params, |rng| {
        // direction: normalized Gaussian; radius: inverse-CDF as above
        let (dir, u) = loop {
            let g: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            let u = rng.gen::<f64>().powf(inv_n);
            if norm > 0.0 && u < 1.0 {
                break (g.into_iter().map(|v| v / norm).collect::<Vec<f64>>(), u);
            }
        };
        let r = u / (lam * (1.0 - u));
        let x: Vec<f64> = center.iter().zip(&dir).map(|(c, d)| c + r * d).collect();
        let rho = x
            .iter()
            .zip(&center)
            .map(|(a, c)| (a - c) * (a - c))
            .sum::<f64>()
            .sqrt();
        let dist = body.distance_squared(&x).expect("dim matches").sqrt();
        scale * ((1.0 + lam * rho) / (1.0 + lam * dist)).powi(power)
    })?;
    Ok((
        estimate_from_stats("beta", stats, params),
        exact_value,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::BodySpec;
    use crate::ivstats;
    use approx::assert_relative_eq;

    fn params(samples: u64, seed: u64) -> SampleParams {
        SampleParams::new(samples, seed)
    }

    fn assert_within(se_multiple: f64, est: &MCEstimate, exact: f64) {
        let dist = (est.value - exact).abs();
        assert!(
            dist <= se_multiple * est.std_error.max(1e-12),
            "{}: |{} - {exact}| = {dist} > {se_multiple} * {}",
            est.estimator_id,
            est.value,
            est.std_error
        );
    }

    #[test]
    fn wills_point_with_matched_proposal_has_no_variance() {
        let body = BodySpec::Point { dim: 3 };
        let sigma = (2.0 * PI).sqrt().recip();
        let est = wills_estimate(&body, &params(200, 1), Some(sigma)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        assert!(est.std_error < 1e-12);
    }

    #[test]
    fn wills_of_squares() {
        let body = BodySpec::cube(2);
        let est = wills_estimate(&body, &params(40_000, 2), None).unwrap();
        assert_within(4.0, &est, 4.0);
        assert!(est.std_error > 0.0);
    }

    #[test]
    fn gf_matches_scaled_wills_identity() {
        let body = BodySpec::Box { lengths: vec![1.0, 1.0] };
        let seq = exact::sequence_of(&body).unwrap();
        for lam in [1.0f64, 2.0] {
            let exact_value =
                lam.powi(-2) * ivstats::gf_eval(&seq, lam).unwrap();
            let est = gf_estimate(&body, lam, &params(40_000, 3), None).unwrap();
            assert_within(4.0, &est, exact_value);
        }
        assert!(gf_estimate(&body, 0.0, &params(10, 0), None).is_err());
    }

    #[test]
    fn gf_point_with_matched_proposal_is_exact() {
        let body = BodySpec::Point { dim: 2 };
        for lam in [0.5, 2.0] {
            let sigma = (lam * (2.0 * PI).sqrt()).recip();
            let est = gf_estimate(&body, lam, &params(100, 4), Some(sigma)).unwrap();
            assert_relative_eq!(est.value, lam.powi(-2), epsilon = 1e-12);
            assert!(est.std_error < 1e-12);
        }
    }

    #[test]
    fn h_moments_of_box() {
        let body = BodySpec::Box { lengths: vec![1.0, 2.0, 3.0] };
        let (eh, eh2) = h_moment_estimates(&body, &params(60_000, 5), None).unwrap();
        assert_within(4.0, &eh, 13.0 / 24.0);
        assert_within(4.0, &eh2, 1.0);
        assert_eq!(eh.estimator_id, "eh");
        assert_eq!(eh2.estimator_id, "eh2");
    }

    #[test]
    fn h_moments_of_point_forced_by_dimension() {
        let body = BodySpec::Point { dim: 2 };
        let (eh, _) = h_moment_estimates(&body, &params(60_000, 6), None).unwrap();
        assert_within(4.0, &eh, 1.0);
    }

    #[test]
    fn kubota_ball_is_rotation_free() {
        let body = BodySpec::Ball { dim: 3, radius: 1.0 };
        let est = kubota_estimate(&body, 2, &params(100, 7)).unwrap();
        let exact_v2 = exact::ball_sequence(3, 1.0).unwrap().values()[2];
        assert_eq!(est.value, exact_v2);
        assert_eq!(est.std_error, 0.0);
        // scaled and translated balls reduce too
        let moved = BodySpec::translated(
            vec![5.0, 5.0, 5.0],
            BodySpec::scaled(2.0, BodySpec::Ball { dim: 3, radius: 0.5 }),
        );
        let est = kubota_estimate(&moved, 1, &params(100, 7)).unwrap();
        assert_eq!(est.value, exact::ball_sequence(3, 1.0).unwrap().values()[1]);
    }

    #[test]
    fn kubota_box_recovers_symmetric_functions() {
        let body = BodySpec::cube(3);
        let est = kubota_estimate(&body, 1, &params(30_000, 8)).unwrap();
        assert_within(4.0, &est, 3.0);
        let body = BodySpec::Box { lengths: vec![1.0, 2.0, 3.0] };
        let est = kubota_estimate(&body, 2, &params(30_000, 9)).unwrap();
        assert_within(4.0, &est, 11.0);
    }

    #[test]
    fn kubota_capability_limits() {
        let prod = BodySpec::product(BodySpec::cube(1), BodySpec::Ball { dim: 2, radius: 1.0 });
        assert!(matches!(
            kubota_estimate(&prod, 1, &params(10, 0)),
            Err(Error::Unsupported { .. })
        ));
        let big = BodySpec::cube(13);
        assert!(matches!(
            kubota_estimate(&big, 1, &params(10, 0)),
            Err(Error::Unsupported { .. })
        ));
        let body = BodySpec::cube(2);
        assert!(kubota_estimate(&body, 3, &params(10, 0)).is_err());
        // j = 0 is the Euler characteristic, exactly 1
        let est = kubota_estimate(&body, 0, &params(10, 0)).unwrap();
        assert_eq!((est.value, est.std_error), (1.0, 0.0));
    }

    #[test]
    fn steiner_polynomial_of_square() {
        let body = BodySpec::cube(2);
        let (est, poly) = steiner_check(&body, 1.0, &params(40_000, 10)).unwrap();
        assert_relative_eq!(poly, PI + 5.0, epsilon = 1e-12);
        assert_within(4.0, &est, poly);
        let (_, poly_half) = steiner_check(&body, 0.5, &params(1, 0)).unwrap();
        assert_relative_eq!(poly_half, 0.25 * PI + 3.0, epsilon = 1e-12);
    }

    #[test]
    fn steiner_polynomial_of_disk_and_point() {
        let disk = BodySpec::Ball { dim: 2, radius: 1.0 };
        let (est, poly) = steiner_check(&disk, 1.0, &params(40_000, 11)).unwrap();
        assert_relative_eq!(poly, 4.0 * PI, max_relative = 1e-12);
        assert_within(4.0, &est, poly);
        let point = BodySpec::Point { dim: 2 };
        let (est, poly) = steiner_check(&point, 1.0, &params(40_000, 12)).unwrap();
        assert_relative_eq!(poly, PI, epsilon = 1e-12);
        assert_within(4.0, &est, poly);
    }

    #[test]
    fn beta_integral_point_is_exact() {
        let point = BodySpec::Point { dim: 2 };
        let (est, exact_value) = beta_integral_check(&point, 1.0, &params(200, 13)).unwrap();
        assert_relative_eq!(exact_value, PI, max_relative = 1e-13);
        // the proposal matches the integrand exactly: every weight is the
        // same number, and the running statistics see that as zero variance
        assert_eq!(est.value, exact_value);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn beta_integral_values() {
        let sq = BodySpec::cube(2);
        let (est, exact_value) = beta_integral_check(&sq, 1.0, &params(40_000, 14)).unwrap();
        assert_relative_eq!(exact_value, PI + 3.0, max_relative = 1e-12);
        assert_within(4.0, &est, exact_value);
        let disk = BodySpec::Ball { dim: 2, radius: 1.0 };
        let (est, exact_value) = beta_integral_check(&disk, 2.0, &params(40_000, 15)).unwrap();
        assert_relative_eq!(exact_value, 7.0 * PI / 4.0, max_relative = 1e-12);
        assert_within(4.0, &est, exact_value);
    }

    #[test]
    fn estimators_are_reproducible() {
        let body = BodySpec::Box { lengths: vec![1.0, 2.0] };
        let p = params(5_000, 99).with_chunk_size(512);
        let a = wills_estimate(&body, &p, None).unwrap();
        let b = wills_estimate(&body, &p, None).unwrap();
        assert_eq!(a, b);
        let c = wills_estimate(&body, &params(5_000, 100).with_chunk_size(512), None).unwrap();
        assert_ne!(a.value, c.value);
    }
}
