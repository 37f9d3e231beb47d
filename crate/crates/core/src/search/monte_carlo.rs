//! Uniform random subsets, each element kept independently with probability
//! 1/2. Samples are drawn in fixed-size chunks; chunk `c` uses the ChaCha8
//! stream `c` of the seeded generator, so a run is reproducible from its seed
//! alone and independent of the thread count.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::kernel::{MaskBits, SubsetKernel};
use crate::bits::FixedBits;
use crate::sets::IntSet;

pub(crate) const SAMPLES_PER_CHUNK: u64 = 1 << 16;

pub(crate) struct McOutcome {
    pub hit_count: u64,
    pub hits: Vec<IntSet>,
}

#[derive(Default)]
struct Partial {
    hit_count: u64,
    hits: Vec<Vec<usize>>,
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// `accept(sums, diffs, size)` decides whether a sample is a hit; samples whose
/// size falls outside `[min_size, max_size]` are drawn but never hits.
pub(crate) fn sample<A>(
    ground: &IntSet,
    samples: u64,
    seed: u64,
    min_size: usize,
    max_size: usize,
    hit_cap: usize,
    accept: A,
) -> McOutcome
where
    A: Fn(u64, u64, usize) -> bool + Sync,
{
    let n = ground.len();
    let chunks = samples.div_ceil(SAMPLES_PER_CHUNK);
    let interval = n > 0 && ground.diameter() as usize == n - 1;
    let kernel = SubsetKernel::for_ground(ground);
    let partials: Vec<Partial> = (0..chunks)
        .into_par_iter()
        .map_init(
            || kernel.clone(),
            |k, c| {
                let count = SAMPLES_PER_CHUNK.min(samples - c * SAMPLES_PER_CHUNK);
                let mut rng = chunk_rng(seed, c);
                let window = (min_size, max_size, hit_cap);
                // Intervals of up to 256 points use the fixed kernel straight
                // from the random words.
                match n {
                    _ if interval && n <= 32 => interval_chunk::<1, _>(&mut rng, n, count, window, &accept),
                    _ if interval && n <= 64 => interval_chunk::<2, _>(&mut rng, n, count, window, &accept),
                    _ if interval && n <= 128 => interval_chunk::<4, _>(&mut rng, n, count, window, &accept),
                    _ if interval && n <= 256 => interval_chunk::<8, _>(&mut rng, n, count, window, &accept),
                    _ => general_chunk(k, &mut rng, n, count, window, &accept),
                }
            },
        )
        .collect();
    let mut out = McOutcome { hit_count: 0, hits: Vec::new() };
    for p in partials {
        out.hit_count += p.hit_count;
        for h in p.hits {
            if out.hits.len() < hit_cap {
                out.hits.push(ground.subset_by_indices(&h));
            }
        }
    }
    out
}

fn interval_chunk<const W: usize, A>(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: u64,
    (min_size, max_size, hit_cap): (usize, usize, usize),
    accept: &A,
) -> Partial
where
    A: Fn(u64, u64, usize) -> bool,
{
    let mut p = Partial::default();
    let used_words = n.div_ceil(64);
    let tail_mask = if n.is_multiple_of(64) { u64::MAX } else { (1u64 << (n % 64)) - 1 };
    for _ in 0..count {
        let mut pos = [0u64; W];
        for w in pos.iter_mut().take(used_words) {
            *w = rng.next_u64();
        }
        pos[used_words - 1] &= tail_mask;
        let size = pos.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if size == 0 || size < min_size || size > max_size {
            continue;
        }
        let (s, d) = FixedBits::<W>::counts(&pos);
        if accept(s, d, size) {
            p.hit_count += 1;
            if p.hits.len() < hit_cap {
                p.hits.push(crate::bits::ones(&pos).collect());
            }
        }
    }
    p
}

fn general_chunk<A>(
    k: &mut SubsetKernel,
    rng: &mut ChaCha8Rng,
    n: usize,
    count: u64,
    (min_size, max_size, hit_cap): (usize, usize, usize),
    accept: &A,
) -> Partial
where
    A: Fn(u64, u64, usize) -> bool,
{
    let mut p = Partial::default();
    let words = n.div_ceil(64);
    let mut buf = vec![0u64; words];
    let mut idx: Vec<usize> = Vec::with_capacity(n);
    for _ in 0..count {
        idx.clear();
        for (wi, w) in buf.iter_mut().enumerate() {
            *w = rng.next_u64();
            if wi == words - 1 && !n.is_multiple_of(64) {
                *w &= (1u64 << (n % 64)) - 1;
            }
            idx.extend(MaskBits(*w).map(|b| wi * 64 + b));
        }
        let size = idx.len();
        if size == 0 || size < min_size || size > max_size {
            continue;
        }
        let (s, d) = k.counts(idx.iter().copied());
        if accept(s, d, size) {
            p.hit_count += 1;
            if p.hits.len() < hit_cap {
                p.hits.push(idx.clone());
            }
        }
    }
    p
}
