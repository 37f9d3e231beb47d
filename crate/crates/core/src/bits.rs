//! Word-level shift-or kernels.
//!
//! A set of positions `P ⊆ [0, D]` is a bit vector. Its sumset is the union of
//! `P << p` over `p ∈ P`, and the nonnegative half of its difference set is the
//! union of `P >> p`. Both cost `O(|P| · D / 64)` word operations.

/// `dst |= src << shift`, truncated to `dst.len()` words.
#[inline]
pub fn shl_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let words = shift / 64;
    let bits = shift % 64;
    if words >= dst.len() {
        return;
    }
    let n = dst.len();
    if bits == 0 {
        for (d, s) in dst[words..].iter_mut().zip(src) {
            *d |= s;
        }
    } else {
        for (j, d) in dst[words..n].iter_mut().enumerate() {
            let lo = if j < src.len() { src[j] << bits } else { 0 };
            let hi = if j >= 1 && j - 1 < src.len() {
                src[j - 1] >> (64 - bits)
            } else {
                0
            };
            *d |= lo | hi;
        }
    }
}

/// `dst |= src >> shift`.
#[inline]
pub fn shr_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let words = shift / 64;
    let bits = shift % 64;
    if words >= src.len() {
        return;
    }
    for (i, d) in dst.iter_mut().enumerate() {
        let j = i + words;
        if j >= src.len() {
            break;
        }
        let lo = src[j] >> bits;
        let hi = if bits != 0 && j + 1 < src.len() {
            src[j + 1] << (64 - bits)
        } else {
            0
        };
        *d |= lo | hi;
    }
}

#[inline]
pub fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

#[inline]
pub fn set_bit(words: &mut [u64], bit: usize) {
    words[bit / 64] |= 1u64 << (bit % 64);
}

/// Iterates the indices of set bits in ascending order.
pub fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            }
        })
    })
}

/// Fixed-width dense kernel for sets whose sumset fits in `64 * W` bits.
///
/// Used by the search engines, where millions of small sets are classified
/// and heap allocation per set would dominate.
#[derive(Clone, Copy)]
pub struct FixedBits<const W: usize>;

impl<const W: usize> FixedBits<W> {
    pub const CAPACITY: usize = 64 * W;

    /// Returns `(|P + P|, |P - P|)` for the positions in `pos`. All positions
    /// must be below `CAPACITY / 2`.
    #[inline]
    pub fn counts(pos: &[u64; W]) -> (u64, u64) {
        let mut sums = [0u64; W];
        let mut diffs = [0u64; W];
        for (wi, &word) in pos.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let p = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                shl_fixed(&mut sums, pos, p);
                shr_fixed(&mut diffs, pos, p);
            }
        }
        let sum_count = sums.iter().map(|w| w.count_ones() as u64).sum();
        // diffs holds {a - b >= 0}; the full difference set is its mirror image
        // glued at 0.
        let nonneg: u64 = diffs.iter().map(|w| w.count_ones() as u64).sum();
        (sum_count, 2 * nonneg - 1)
    }
}

#[inline(always)]
fn shl_fixed<const W: usize>(dst: &mut [u64; W], src: &[u64; W], shift: usize) {
    let words = shift / 64;
    let bits = shift % 64;
    if bits == 0 {
        for i in words..W {
            dst[i] |= src[i - words];
        }
    } else {
        dst[words] |= src[0] << bits;
        for i in words + 1..W {
            dst[i] |= (src[i - words] << bits) | (src[i - words - 1] >> (64 - bits));
        }
    }
}

#[inline(always)]
fn shr_fixed<const W: usize>(dst: &mut [u64; W], src: &[u64; W], shift: usize) {
    let words = shift / 64;
    let bits = shift % 64;
    if bits == 0 {
        for i in 0..W - words {
            dst[i] |= src[i + words];
        }
    } else {
        for i in 0..W - words - 1 {
            dst[i] |= (src[i + words] >> bits) | (src[i + words + 1] << (64 - bits));
        }
        dst[W - words - 1] |= src[W - 1] >> bits;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_counts(pos: &[usize]) -> (u64, u64) {
        let mut s = std::collections::BTreeSet::new();
        let mut d = std::collections::BTreeSet::new();
        for &a in pos {
            for &b in pos {
                s.insert(a + b);
                d.insert(a as i64 - b as i64);
            }
        }
        (s.len() as u64, d.len() as u64)
    }

    #[test]
    fn shifts_match_scalar_reference() {
        let src = [0x8000_0000_0000_0001u64, 0x3];
        let mut dst = [0u64; 3];
        shl_or(&mut dst, &src, 1);
        assert_eq!(dst, [0x2, 0x7, 0]);
        let mut dst = [0u64; 2];
        shr_or(&mut dst, &src, 64);
        assert_eq!(dst, [0x3, 0]);
        let mut dst = [0u64; 2];
        shr_or(&mut dst, &src, 63);
        assert_eq!(dst, [0x7, 0]);
    }

    #[test]
    fn ones_lists_bits() {
        let w = [0b1011u64, 1 << 63];
        assert_eq!(ones(&w).collect::<Vec<_>>(), vec![0, 1, 3, 127]);
    }

    #[test]
    fn fixed_kernel_conway() {
        let mut pos = [0u64; 1];
        for p in [0, 2, 3, 4, 7, 11, 12, 14] {
            pos[0] |= 1 << p;
        }
        assert_eq!(FixedBits::<1>::counts(&pos), (26, 25));
    }

    #[test]
    fn fixed_kernel_crosses_words() {
        let elems = [0usize, 5, 63, 64, 65, 100, 127];
        let mut pos = [0u64; 4];
        for &p in &elems {
            pos[p / 64] |= 1 << (p % 64);
        }
        assert_eq!(FixedBits::<4>::counts(&pos), naive_counts(&elems));
    }
}
