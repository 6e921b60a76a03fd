//! Replicate-parallel Monte Carlo with reproducible streams.
//!
//! Replicate `i` draws from its own ChaCha stream `(seed, i)`, so results do
//! not depend on how replicates are scheduled across threads. Replicates are
//! reduced in fixed-size chunks whose partial results are merged in chunk
//! order, which keeps the floating-point sums identical for any thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Random stream handed to each replicate.
pub type StreamRng = ChaCha8Rng;

const CHUNK: usize = 1024;

/// Monte Carlo parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCParams {
    pub replicates: usize,
    pub seed: u64,
    /// Agreement threshold in units of (combined) standard error.
    pub confidence_multiplier: f64,
}

impl MCParams {
    pub const MIN_REPLICATES: usize = 100;
    pub const DEFAULT_MULTIPLIER: f64 = 3.0;

    pub fn new(replicates: usize, seed: u64) -> Result<Self> {
        if replicates < Self::MIN_REPLICATES {
            return Err(Error::InvalidParameter(format!(
                "at least {} replicates required, got {replicates}",
                Self::MIN_REPLICATES
            )));
        }
        Ok(Self {
            replicates,
            seed,
            confidence_multiplier: Self::DEFAULT_MULTIPLIER,
        })
    }

    pub fn with_multiplier(mut self, multiplier: f64) -> Result<Self> {
        if !(multiplier.is_finite() && multiplier > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "confidence multiplier must be positive, got {multiplier}"
            )));
        }
        self.confidence_multiplier = multiplier;
        Ok(self)
    }
}

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub replicates: usize,
}

impl Estimate {
    /// `sqrt(se_a^2 + se_b^2)`.
    pub fn combined_stderr(&self, other: &Estimate) -> f64 {
        self.stderr.hypot(other.stderr)
    }

    /// `|mean - value| <= multiplier * stderr`.
    pub fn agrees_with_value(&self, value: f64, multiplier: f64) -> bool {
        (self.mean - value).abs() <= multiplier * self.stderr
    }

    /// `|a - b| <= multiplier * sqrt(se_a^2 + se_b^2)`.
    pub fn agrees_with(&self, other: &Estimate, multiplier: f64) -> bool {
        (self.mean - other.mean).abs() <= multiplier * self.combined_stderr(other)
    }
}

/// Streaming mean/variance (Welford), mergeable across chunks.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / total;
        self.count += other.count;
    }

    fn estimate(&self) -> Estimate {
        let variance = if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        };
        Estimate {
            mean: self.mean,
            stderr: (variance / self.count.max(1) as f64).sqrt(),
            replicates: self.count,
        }
    }
}

/// The random stream of replicate `index` under `seed`.
pub fn replicate_stream(seed: u64, index: usize) -> StreamRng {
    let mut rng = StreamRng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Estimates the means of `width` quantities computed jointly per replicate.
///
/// `sample` fills the provided buffer (zeroed before each call).
pub fn estimate_vector<F>(params: &MCParams, width: usize, sample: F) -> Result<Vec<Estimate>>
where
    F: Fn(&mut StreamRng, &mut [f64]) -> Result<()> + Sync,
{
    let chunks = params.replicates.div_ceil(CHUNK);
    let partials: Vec<Vec<Accumulator>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(params.replicates);
            let mut acc = vec![Accumulator::default(); width];
            let mut buf = vec![0.0; width];
            for index in start..end {
                let mut rng = replicate_stream(params.seed, index);
                buf.iter_mut().for_each(|v| *v = 0.0);
                sample(&mut rng, &mut buf)?;
                for (a, &v) in acc.iter_mut().zip(&buf) {
                    if !v.is_finite() {
                        return Err(Error::NonFinite(format!(
                            "replicate {index} produced {v}"
                        )));
                    }
                    a.push(v);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut total = vec![Accumulator::default(); width];
    for partial in &partials {
        for (t, p) in total.iter_mut().zip(partial) {
            t.merge(p);
        }
    }
    Ok(total.iter().map(Accumulator::estimate).collect())
}

/// Estimates the mean of one quantity per replicate.
pub fn estimate_scalar<F>(params: &MCParams, sample: F) -> Result<Estimate>
where
    F: Fn(&mut StreamRng) -> Result<f64> + Sync,
{
    let out = estimate_vector(params, 1, |rng, buf| {
        buf[0] = sample(rng)?;
        Ok(())
    })?;
    Ok(out[0])
}

/// Raw per-replicate rows (`width` values each, row-major, replicate order).
pub fn sample_rows<F>(params: &MCParams, width: usize, sample: F) -> Result<Vec<f64>>
where
    F: Fn(&mut StreamRng, &mut [f64]) -> Result<()> + Sync,
{
    let mut rows = vec![0.0; params.replicates * width];
    rows.par_chunks_mut(width.max(1))
        .enumerate()
        .try_for_each(|(index, row)| {
            let mut rng = replicate_stream(params.seed, index);
            sample(&mut rng, row)
        })?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn rejects_too_few_replicates() {
        assert!(MCParams::new(99, 0).is_err());
        assert!(MCParams::new(100, 0).is_ok());
        assert!(MCParams::new(100, 0).unwrap().with_multiplier(0.0).is_err());
    }

    #[test]
    fn uniform_mean_and_stderr() {
        let params = MCParams::new(50_000, 42).unwrap();
        let est = estimate_scalar(&params, |rng| Ok(rng.random::<f64>())).unwrap();
        assert_eq!(est.replicates, 50_000);
        let expected_se = (1.0f64 / 12.0 / 50_000.0).sqrt();
        assert!((est.stderr / expected_se - 1.0).abs() < 0.05);
        assert!(est.agrees_with_value(0.5, 3.0));
    }

    #[test]
    fn results_are_reproducible_and_thread_independent() {
        let params = MCParams::new(5_000, 9).unwrap();
        let run = || estimate_scalar(&params, |rng| Ok(rng.random::<f64>().powi(3))).unwrap();
        let a = run();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(a, run());
        assert_eq!(a, single);
    }

    #[test]
    fn stderr_shrinks_like_inverse_sqrt() {
        let small = MCParams::new(2_000, 1).unwrap();
        let large = MCParams::new(200_000, 1).unwrap();
        let f = |rng: &mut StreamRng| Ok(rng.random::<f64>());
        let ratio = estimate_scalar(&small, f).unwrap().stderr
            / estimate_scalar(&large, f).unwrap().stderr;
        assert!((ratio - 10.0).abs() < 0.5, "{ratio}");
    }

    #[test]
    fn accumulator_merge_matches_direct() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64).sin()).collect();
        let mut whole = Accumulator::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut left = Accumulator::default();
        let mut right = Accumulator::default();
        xs[..37].iter().for_each(|&x| left.push(x));
        xs[37..].iter().for_each(|&x| right.push(x));
        left.merge(&right);
        assert!((left.mean - whole.mean).abs() < 1e-15);
        assert!((left.m2 - whole.m2).abs() < 1e-12);
    }

    #[test]
    fn sample_rows_is_replicate_ordered() {
        let params = MCParams::new(300, 4).unwrap();
        let rows = sample_rows(&params, 2, |rng, row| {
            row[0] = rng.random();
            row[1] = 1.0;
            Ok(())
        })
        .unwrap();
        let mut r = replicate_stream(4, 17);
        assert_eq!(rows[34], r.random::<f64>());
        assert_eq!(rows[35], 1.0);
    }
}
