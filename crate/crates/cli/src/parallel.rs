//! Runs Monte Carlo chunks on OS threads.
//!
//! Chunk seeds and sizes come from the core crate's fixed plan, and hit counts
//! are summed, so the result equals the serial [`hwbound_core::estimate_tail`]
//! for the same chunk count regardless of scheduling.

use std::num::NonZeroUsize;
use std::thread;

use hwbound_core::montecarlo::{count_chunk, validate_run, TailEstimate};
use hwbound_core::spectral::Spectrum;
use hwbound_core::TailQuery;

pub fn available_chunks() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

pub fn estimate_tail(
    spec: &Spectrum,
    query: &TailQuery,
    samples: u64,
    seed: u64,
    confidence: f64,
    chunks: usize,
) -> hwbound_core::Result<TailEstimate> {
    let plan = validate_run(samples, confidence, chunks)?;
    let workers = plan.chunks().min(available_chunks());
    let hits: u64 = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let plan = &plan;
                scope.spawn(move || {
                    (w..plan.chunks())
                        .step_by(workers)
                        .map(|c| count_chunk(spec, query, seed, plan, c))
                        .sum::<u64>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("Monte Carlo worker panicked"))
            .sum()
    });
    TailEstimate::from_hits(*query, &plan, hits, seed, confidence)
}
