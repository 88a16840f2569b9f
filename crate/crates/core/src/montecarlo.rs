//! Seeded Monte Carlo estimates of `P(|xᵀAx − tr A| ≥ a)` and their check
//! against the analytic bounds.
//!
//! Writing `A = UᵀΛU` and `y = Ux`, `y` is again standard normal and
//! `xᵀAx − tr A = Σ_i λ_i (y_i² − 1)`, so only the eigenvalues are needed.
//!
//! A run of `samples` draws is split into `chunks` contiguous pieces. Chunk `c`
//! draws from its own [`GaussianStream`] seeded with
//! [`mix_seed`]`(seed, c)`, so a fixed `(seed, samples, chunks)` gives the same
//! hit count whether the chunks run serially or in parallel.

use crate::bounds::{BoundReport, Side, TailQuery};
use crate::normal::{mix_seed, quantile, GaussianStream};
use crate::spectral::Spectrum;
use crate::{Error, Result};

/// Smallest sample count [`estimate_tail`] accepts.
pub const MIN_SAMPLES: u64 = 1000;

pub const DEFAULT_CONFIDENCE: f64 = 0.99;

/// One draw of `Σ_i λ_i (y_i² − 1)`.
pub fn sample_deviation(spec: &Spectrum, gauss: &mut GaussianStream) -> f64 {
    spec.eigenvalues()
        .iter()
        .map(|&lambda| {
            let y = gauss.next_gaussian();
            lambda * (y * y - 1.0)
        })
        .sum()
}

/// Whether a deviation falls in the queried tail.
#[inline]
pub fn is_hit(deviation: f64, query: &TailQuery) -> bool {
    let a = query.a();
    match query.side() {
        Side::Upper => deviation >= a,
        Side::Lower => deviation <= -a,
        Side::TwoSided => deviation.abs() >= a,
    }
}

/// Fixed partition of a run into chunks; the first `samples % chunks` chunks
/// get one extra draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkPlan {
    samples: u64,
    chunks: u64,
}

impl ChunkPlan {
    pub fn new(samples: u64, chunks: usize) -> Result<Self> {
        if chunks == 0 {
            return Err(Error::OutOfDomain {
                name: "chunks",
                value: 0.0,
            });
        }
        Ok(Self {
            samples,
            chunks: chunks as u64,
        })
    }

    pub fn chunks(&self) -> usize {
        self.chunks as usize
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn chunk_len(&self, chunk: usize) -> u64 {
        let chunk = chunk as u64;
        let base = self.samples / self.chunks;
        base + u64::from(chunk < self.samples % self.chunks)
    }
}

/// Counts hits among the draws of one chunk.
pub fn count_chunk(spec: &Spectrum, query: &TailQuery, seed: u64, plan: &ChunkPlan, chunk: usize) -> u64 {
    let mut gauss = GaussianStream::new(mix_seed(seed, chunk as u64));
    let mut hits = 0;
    for _ in 0..plan.chunk_len(chunk) {
        if is_hit(sample_deviation(spec, &mut gauss), query) {
            hits += 1;
        }
    }
    hits
}

/// Wilson score interval for `hits` successes in `samples` trials.
pub fn wilson_interval(hits: u64, samples: u64, confidence: f64) -> Result<(f64, f64)> {
    check_confidence(confidence)?;
    if samples == 0 || hits > samples {
        return Err(Error::OutOfDomain {
            name: "hits",
            value: hits as f64,
        });
    }
    let n = samples as f64;
    let p = hits as f64 / n;
    let z = quantile(1.0 - 0.5 * (1.0 - confidence));
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    // rounding can push the edges past p at the extremes
    let low = (center - half).max(0.0).min(p);
    let high = (center + half).min(1.0).max(p);
    Ok((low, high))
}

fn check_confidence(confidence: f64) -> Result<()> {
    if confidence > 0.0 && confidence < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "confidence",
            value: confidence,
        })
    }
}

/// Monte Carlo estimate of a tail probability with a Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub query: TailQuery,
    pub samples: u64,
    pub hits: u64,
    pub point_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
    pub chunks: usize,
}

impl TailEstimate {
    /// Assembles an estimate from a finished hit count.
    pub fn from_hits(
        query: TailQuery,
        plan: &ChunkPlan,
        hits: u64,
        seed: u64,
        confidence: f64,
    ) -> Result<Self> {
        let (ci_low, ci_high) = wilson_interval(hits, plan.samples(), confidence)?;
        Ok(Self {
            query,
            samples: plan.samples(),
            hits,
            point_estimate: hits as f64 / plan.samples() as f64,
            ci_low,
            ci_high,
            confidence,
            seed,
            chunks: plan.chunks(),
        })
    }
}

/// Checks the run parameters shared by serial and parallel estimation.
pub fn validate_run(samples: u64, confidence: f64, chunks: usize) -> Result<ChunkPlan> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            samples,
            floor: MIN_SAMPLES,
        });
    }
    check_confidence(confidence)?;
    ChunkPlan::new(samples, chunks)
}

/// Estimates the tail probability, running the chunks one after another.
pub fn estimate_tail(
    spec: &Spectrum,
    query: &TailQuery,
    samples: u64,
    seed: u64,
    confidence: f64,
    chunks: usize,
) -> Result<TailEstimate> {
    let plan = validate_run(samples, confidence, chunks)?;
    let hits = (0..plan.chunks())
        .map(|c| count_chunk(spec, query, seed, &plan, c))
        .sum();
    TailEstimate::from_hits(*query, &plan, hits, seed, confidence)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violation,
}

/// Flags a violation when the lower confidence limit exceeds any tier's
/// clamped probability.
pub fn verify_bound(estimate: &TailEstimate, report: &BoundReport) -> Result<Verdict> {
    if estimate.query != report.query {
        return Err(Error::QueryMismatch);
    }
    let bounds = [
        report.prob_universal,
        report.prob_parametrized,
        report.prob_chernoff,
    ];
    if bounds.iter().any(|&p| estimate.ci_low > p) {
        Ok(Verdict::Violation)
    } else {
        Ok(Verdict::Consistent)
    }
}
