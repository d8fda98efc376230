//! Seeded Monte Carlo estimators.
//!
//! Every estimator is an independent stochastic oracle for a quantity the
//! exact modules compute in closed form: rotation-averaged projection
//! volumes, Gaussian-weighted distance integrals, hit-or-miss parallel-body
//! volumes, a heavy-tailed beta integral, and an exact sampler for the
//! body-associated density on interval products.
//!
//! # Determinism
//!
//! Sampling is partitioned into fixed-size chunks; chunk `c` draws from the
//! ChaCha substream with stream index `c` of the user seed. Chunks may be
//! evaluated on any number of worker threads, but their partial statistics
//! are reduced in chunk order, so a given `(samples, seed, chunk_size)`
//! triple produces bit-identical results on any machine and any thread
//! count.

mod estimators;
mod haar;
mod sampler;
mod zonotope;

pub use estimators::{
    beta_integral_check, gf_estimate, h_moment_estimates, kubota_estimate, kubota_estimate_with,
    steiner_check, wills_estimate,
};
pub use haar::haar_rotation;
pub use sampler::mu_sampler_product;
pub use zonotope::zonotope_volume;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::{Error, Result};

/// A deterministic RNG substream: `seed` selects the key, `stream_index`
/// selects one of 2^64 independent ChaCha streams under that key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> RngStream {
        RngStream { seed, stream_index }
    }

    /// Instantiate the generator for this substream.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// One Monte Carlo result. Identical inputs and seed give identical `value`.
#[derive(Debug, Clone, PartialEq)]
pub struct MCEstimate {
    pub estimator_id: String,
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Sample count, seed, and the chunk size that fixes the reduction plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleParams {
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

impl SampleParams {
    pub fn new(samples: u64, seed: u64) -> SampleParams {
        SampleParams {
            samples,
            seed,
            chunk_size: 16384,
        }
    }

    pub fn with_chunk_size(mut self, chunk_size: u64) -> SampleParams {
        self.chunk_size = chunk_size;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("sample count must be >= 1".into()));
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidInput("chunk size must be >= 1".into()));
        }
        Ok(())
    }
}

impl Default for SampleParams {
    fn default() -> SampleParams {
        SampleParams::new(10_000, 0)
    }
}

/// Run the chunk plan: chunk `c` accumulates `per_sample` over its substream
/// into a `K`-component sum. Parallel over chunks, reduced sequentially in
/// chunk order, so the total is independent of the worker count.
pub(crate) fn run_chunks<const K: usize, F>(params: &SampleParams, per_sample: F) -> Result<[f64; K]>
where
    F: Fn(&mut ChaCha12Rng, &mut [f64; K]) + Sync,
{
    params.validate()?;
    let n_chunks = params.samples.div_ceil(params.chunk_size);
    let sums: Vec<[f64; K]> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngStream::new(params.seed, c).rng();
            let start = c * params.chunk_size;
            let len = params.chunk_size.min(params.samples - start);
            let mut acc = [0.0; K];
            for _ in 0..len {
                per_sample(&mut rng, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = [0.0; K];
    for chunk_sum in sums {
        for k in 0..K {
            total[k] += chunk_sum[k];
        }
    }
    Ok(total)
}

/// Welford-style running mean and squared-deviation sum. Unlike the raw
/// `sum / sum-of-squares` form, the centered recurrence reports an exact
/// zero variance when every sample is the same value, so estimators that
/// happen to have a constant integrand show `std_error == 0` instead of
/// cancellation noise.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub(crate) fn new() -> RunningStats {
        RunningStats { count: 0, mean: 0.0, m2: 0.0 }
    }

    pub(crate) fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combine two disjoint sample sets. Order matters for the exact bit
    /// pattern, so callers must merge in a fixed order.
    pub(crate) fn merge(self, other: RunningStats) -> RunningStats {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let total = self.count + other.count;
        let weight = other.count as f64 / total as f64;
        let delta = other.mean - self.mean;
        RunningStats {
            count: total,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * (self.count as f64 * weight),
        }
    }

    /// Sample mean and its standard error.
    pub(crate) fn mean_and_se(&self) -> (f64, f64) {
        if self.count < 2 {
            return (self.mean, 0.0);
        }
        let nf = self.count as f64;
        let var = (self.m2 / (nf - 1.0)).max(0.0);
        (self.mean, (var / nf).sqrt())
    }
}

/// Run the chunk plan for a single scalar statistic. Each chunk keeps its
/// own running statistics; chunks are merged sequentially in chunk order,
/// so the result is bit-identical for any worker count.
pub(crate) fn run_stats<F>(params: &SampleParams, per_sample: F) -> Result<RunningStats>
where
    F: Fn(&mut ChaCha12Rng) -> f64 + Sync,
{
    params.validate()?;
    let n_chunks = params.samples.div_ceil(params.chunk_size);
    let stats: Vec<RunningStats> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngStream::new(params.seed, c).rng();
            let start = c * params.chunk_size;
            let len = params.chunk_size.min(params.samples - start);
            let mut acc = RunningStats::new();
            for _ in 0..len {
                acc.push(per_sample(&mut rng));
            }
            acc
        })
        .collect();
    Ok(stats.into_iter().fold(RunningStats::new(), RunningStats::merge))
}

pub(crate) fn estimate_from_stats(
    id: impl Into<String>,
    stats: RunningStats,
    params: &SampleParams,
) -> MCEstimate {
    let (value, std_error) = stats.mean_and_se();
    MCEstimate {
        estimator_id: id.into(),
        value,
        std_error,
        samples: params.samples,
        seed: params.seed,
    }
}
