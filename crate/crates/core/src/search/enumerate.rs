//! Deterministic subset enumeration: popcount levels ascending, and within a
//! level increasing bitmask order (colexicographic order of combinations).
//!
//! Each level is cut into fixed rank ranges. Ranges are evaluated in parallel
//! and merged in rank order, so the outcome never depends on the worker count.

use rayon::prelude::*;

use super::kernel::SubsetKernel;

pub(crate) const CHUNK: u64 = 1 << 14;
const BATCH: usize = 64;

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// The `rank`-th `k`-subset of `{0..n}` in colex order, as a bitmask.
pub(crate) fn unrank(mut rank: u64, k: u32, n: u32) -> u64 {
    let mut mask = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        let mut c = top;
        while binomial(c, i) > rank {
            c -= 1;
        }
        rank -= binomial(c, i);
        mask |= 1u64 << c;
        top = c;
    }
    mask
}

pub(crate) fn rank(mask: u64) -> u64 {
    let mut r = 0;
    for (i, c) in super::kernel::MaskBits(mask).enumerate() {
        r += binomial(c as u32, i as u32 + 1);
    }
    r
}

/// Next mask with the same popcount (Gosper).
#[inline]
pub(crate) fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// What a visitor decided about one subset.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Visit {
    Miss,
    Hit,
    Pruned,
}

#[derive(Default)]
struct ChunkOutcome {
    examined: u64,
    pruned: u64,
    hit_count: u64,
    hits: Vec<u64>,
    /// Examined count up to and including the first hit.
    first_hit_at: Option<u64>,
}

#[derive(Debug, Default)]
pub(crate) struct Enumeration {
    pub examined: u64,
    pub pruned: u64,
    pub hit_count: u64,
    pub hits: Vec<u64>,
    pub exhausted: bool,
    /// Position where a truncated run stopped: (level, rank) of the first
    /// subset not visited.
    pub stopped_at: Option<(u32, u64)>,
}

impl Enumeration {
    /// Whether the run visited the subset `mask`.
    pub(crate) fn visited(&self, mask: u64, min_size: u32) -> bool {
        let level = mask.count_ones();
        if level < min_size {
            return false;
        }
        match self.stopped_at {
            None => true,
            Some((l, r)) => level < l || (level == l && rank(mask) < r),
        }
    }
}

pub(crate) struct Plan {
    pub n: u32,
    pub min_size: u32,
    pub max_size: u32,
    pub budget: u64,
    pub stop_at_first: bool,
    pub hit_cap: usize,
}

/// Runs `visit` over the subsets described by `plan`.
pub(crate) fn run<F>(plan: &Plan, kernel: &SubsetKernel, visit: F) -> Enumeration
where
    F: Fn(&mut SubsetKernel, u64) -> Visit + Sync,
{
    assert!(plan.n <= 63, "bitmask enumeration supports at most 63 ground elements");
    let mut out = Enumeration { exhausted: true, ..Default::default() };
    let mut remaining = plan.budget;
    for level in plan.min_size..=plan.max_size.min(plan.n) {
        let total = binomial(plan.n, level);
        let todo = total.min(remaining);
        let chunks: Vec<(u64, u64)> = (0..todo.div_ceil(CHUNK))
            .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(todo)))
            .collect();
        for batch in chunks.chunks(BATCH) {
            let outcomes: Vec<ChunkOutcome> = batch
                .par_iter()
                .map_init(
                    || kernel.clone(),
                    |k, &(lo, hi)| scan(k, level, plan.n, lo, hi, plan, &visit),
                )
                .collect();
            for (o, &(lo, _)) in outcomes.into_iter().zip(batch) {
                if plan.stop_at_first {
                    if let Some(at) = o.first_hit_at {
                        out.examined += at;
                        out.hit_count += 1;
                        out.hits.extend(o.hits.first());
                        out.exhausted = false;
                        out.stopped_at = Some((level, lo + at));
                        return out;
                    }
                }
                out.examined += o.examined;
                out.pruned += o.pruned;
                out.hit_count += o.hit_count;
                let room = plan.hit_cap.saturating_sub(out.hits.len());
                out.hits.extend(o.hits.into_iter().take(room));
            }
        }
        remaining -= todo;
        if todo < total {
            out.exhausted = false;
            out.stopped_at = Some((level, todo));
            return out;
        }
    }
    out
}

fn scan<F>(k: &mut SubsetKernel, level: u32, n: u32, lo: u64, hi: u64, plan: &Plan, visit: &F) -> ChunkOutcome
where
    F: Fn(&mut SubsetKernel, u64) -> Visit,
{
    let mut o = ChunkOutcome::default();
    if level == 0 {
        // the empty set is never a hit
        o.examined = hi - lo;
        return o;
    }
    let mut mask = unrank(lo, level, n);
    for _ in lo..hi {
        o.examined += 1;
        match visit(k, mask) {
            Visit::Hit => {
                o.hit_count += 1;
                if o.first_hit_at.is_none() {
                    o.first_hit_at = Some(o.examined);
                }
                if o.hits.len() < plan.hit_cap {
                    o.hits.push(mask);
                }
                if plan.stop_at_first {
                    return o;
                }
            }
            Visit::Pruned => o.pruned += 1,
            Visit::Miss => {}
        }
        mask = next_same_popcount(mask);
    }
    o
}
