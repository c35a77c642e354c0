use std::sync::atomic::{AtomicU64, Ordering};

use cfcode_core::{BitMatrix, CoverFreeVerifier, ScanOutcome, Verdict, VerifyError};
use rayon::prelude::*;

/// Chunks of negative-set ranks per worker thread.
const CHUNKS_PER_THREAD: u64 = 8;

/// Cover-free check spread over `threads` workers.
///
/// Negative-set ranks are cut into contiguous chunks; outcomes are reduced by
/// smallest failing rank, so the verdict does not depend on `threads`. A
/// chunk starting past an already-found failure is skipped when not counting.
pub fn verify_parallel(
    matrix: &BitMatrix,
    s: u64,
    ell: u64,
    threads: usize,
    count_witnesses: bool,
) -> Result<Verdict, VerifyError> {
    let verifier = CoverFreeVerifier::new(matrix, s, ell)?.counting(count_witnesses);
    let total = verifier.neg_set_count();
    let threads = threads.max(1);
    if threads == 1 {
        return Ok(verifier.verify());
    }
    let chunk = total.div_ceil(threads as u64 * CHUNKS_PER_THREAD).max(1);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let best_failure = AtomicU64::new(u64::MAX);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to start verification worker pool");
    let outcome = pool.install(|| {
        starts
            .par_iter()
            .map(|&start| {
                if !count_witnesses && start > best_failure.load(Ordering::Relaxed) {
                    return None;
                }
                let out = verifier.scan(start..(start + chunk).min(total));
                if let Some((rank, _)) = &out.first_failure {
                    best_failure.fetch_min(*rank, Ordering::Relaxed);
                }
                Some(out)
            })
            .flatten()
            .reduce_with(ScanOutcome::merge)
    });
    Ok(match outcome {
        Some(o) => verifier.verdict(o),
        None => verifier.verify(),
    })
}
