//! Per-subset counting kernels over a fixed ground set.
//!
//! A search classifies millions of subsets of one ground set, so everything
//! that depends only on the ground is precomputed: bit positions for dense
//! grounds, or ranked pair-sum/pair-difference ids for sparse ones.

use crate::bits::FixedBits;
use crate::sets::{sparse_counts, IntSet};

/// Largest ground for which the pair-id table is built.
const PAIR_TABLE_MAX: usize = 128;

#[derive(Clone)]
pub(crate) enum SubsetKernel {
    Dense1(Vec<u64>),
    Dense2(Vec<u64>),
    Dense4(Vec<u64>),
    Dense8(Vec<u64>),
    Dense16(Vec<u64>),
    Pairs(PairTable),
    Sparse { ground: Vec<u64>, scratch: Vec<u64> },
}

impl SubsetKernel {
    pub(crate) fn for_ground(ground: &IntSet) -> Self {
        let e = ground.elements();
        let d = ground.diameter() as usize;
        let lo = ground.min().unwrap_or(0);
        let offsets = || e.iter().map(|&x| x - lo).collect::<Vec<u64>>();
        // positions must stay below half the fixed width
        match d {
            _ if e.is_empty() => SubsetKernel::Dense1(Vec::new()),
            d if d < 32 => SubsetKernel::Dense1(offsets()),
            d if d < 64 => SubsetKernel::Dense2(offsets()),
            d if d < 128 => SubsetKernel::Dense4(offsets()),
            d if d < 256 => SubsetKernel::Dense8(offsets()),
            d if d < 512 => SubsetKernel::Dense16(offsets()),
            _ if e.len() <= PAIR_TABLE_MAX => SubsetKernel::Pairs(PairTable::new(e)),
            _ => SubsetKernel::Sparse { ground: e.to_vec(), scratch: Vec::new() },
        }
    }

    /// `(|S + S|, |S - S|)` for the subset with the given ground indices.
    #[inline]
    pub(crate) fn counts<I: Iterator<Item = usize> + Clone>(&mut self, idx: I) -> (u64, u64) {
        match self {
            SubsetKernel::Dense1(off) => dense::<1, I>(off, idx),
            SubsetKernel::Dense2(off) => dense::<2, I>(off, idx),
            SubsetKernel::Dense4(off) => dense::<4, I>(off, idx),
            SubsetKernel::Dense8(off) => dense::<8, I>(off, idx),
            SubsetKernel::Dense16(off) => dense::<16, I>(off, idx),
            SubsetKernel::Pairs(t) => t.counts(idx),
            SubsetKernel::Sparse { ground, scratch } => {
                scratch.clear();
                scratch.extend(idx.map(|i| ground[i]));
                sparse_counts(scratch)
            }
        }
    }

    #[inline]
    pub(crate) fn counts_mask(&mut self, mask: u64) -> (u64, u64) {
        self.counts(MaskBits(mask))
    }
}

#[inline]
fn dense<const W: usize, I: Iterator<Item = usize>>(off: &[u64], idx: I) -> (u64, u64) {
    let mut pos = [0u64; W];
    for i in idx {
        let p = off[i] as usize;
        pos[p / 64] |= 1u64 << (p % 64);
    }
    FixedBits::<W>::counts(&pos)
}

/// Iterator over set-bit indices of a single word.
#[derive(Clone, Copy)]
pub(crate) struct MaskBits(pub u64);

impl Iterator for MaskBits {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let t = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(t)
        }
    }
}

/// Every pairwise sum `g_i + g_j` (i ≤ j) and positive difference `g_j - g_i`
/// (i < j) of the ground, replaced by its rank among all such values. Distinct
/// values of a subset are then distinct ids, counted in a small bit vector.
#[derive(Clone)]
pub(crate) struct PairTable {
    n: usize,
    sum_id: Vec<u32>,
    diff_id: Vec<u32>,
    sums: Vec<u64>,
    diffs: Vec<u64>,
    picked: Vec<usize>,
}

impl PairTable {
    fn new(g: &[u64]) -> Self {
        let n = g.len();
        let rank = |vals: &mut Vec<u64>| {
            vals.sort_unstable();
            vals.dedup();
        };
        let mut sv = Vec::new();
        let mut dv = Vec::new();
        for i in 0..n {
            for j in i..n {
                sv.push(g[i] + g[j]);
                if j > i {
                    dv.push(g[j] - g[i]);
                }
            }
        }
        rank(&mut sv);
        rank(&mut dv);
        let mut sum_id = vec![0u32; n * n];
        let mut diff_id = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                sum_id[i * n + j] = sv.binary_search(&(g[i] + g[j])).unwrap() as u32;
                if j > i {
                    diff_id[i * n + j] = dv.binary_search(&(g[j] - g[i])).unwrap() as u32;
                }
            }
        }
        PairTable {
            n,
            sum_id,
            diff_id,
            sums: vec![0; sv.len() / 64 + 1],
            diffs: vec![0; dv.len() / 64 + 1],
            picked: Vec::with_capacity(n),
        }
    }

    #[inline]
    fn counts<I: Iterator<Item = usize>>(&mut self, idx: I) -> (u64, u64) {
        self.picked.clear();
        self.picked.extend(idx);
        self.sums.iter_mut().for_each(|w| *w = 0);
        self.diffs.iter_mut().for_each(|w| *w = 0);
        let n = self.n;
        for (a, &i) in self.picked.iter().enumerate() {
            let row = i * n;
            for &j in &self.picked[a..] {
                let s = self.sum_id[row + j] as usize;
                self.sums[s / 64] |= 1 << (s % 64);
                if j != i {
                    let d = self.diff_id[row + j] as usize;
                    self.diffs[d / 64] |= 1 << (d % 64);
                }
            }
        }
        let s = self.sums.iter().map(|w| w.count_ones() as u64).sum();
        let d: u64 = self.diffs.iter().map(|w| w.count_ones() as u64).sum();
        (s, 2 * d + 1)
    }
}
