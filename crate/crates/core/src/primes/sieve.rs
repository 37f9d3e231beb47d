use rayon::prelude::*;

use crate::bits;
use crate::error::{MstdError, Result};

/// Largest supported sieve limit (one bit per integer, so 1 GiB).
pub const MAX_SIEVE_LIMIT: u64 = 1 << 33;

const SEGMENT_WORDS: usize = 4096;
const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// Primality of every integer in `[0, limit]`, one bit each.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    words: Vec<u64>,
    count: u64,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn small_odd_primes(upto: u64) -> Vec<u64> {
    let n = upto as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in (3..=n).step_by(2) {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        for j in (i * i..=n).step_by(2 * i) {
            composite[j] = true;
        }
    }
    out
}

/// Segmented sieve of Eratosthenes. Limits below 2 give an empty sieve.
pub fn sieve(limit: u64) -> Result<PrimeSieve> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(MstdError::Capacity { extent: limit, cap: MAX_SIEVE_LIMIT });
    }
    if limit < 2 {
        return Ok(PrimeSieve { limit, words: vec![0; 1], count: 0 });
    }
    let base = small_odd_primes(isqrt(limit));
    let mut words = vec![ODD_BITS; (limit / 64 + 1) as usize];
    words[0] = (words[0] & !0b10) | 0b100;

    words.par_chunks_mut(SEGMENT_WORDS).enumerate().for_each(|(seg, chunk)| {
        let lo = (seg * SEGMENT_WORDS * 64) as u64;
        let hi = lo + chunk.len() as u64 * 64;
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            while m < hi {
                let off = (m - lo) as usize;
                chunk[off / 64] &= !(1u64 << (off % 64));
                m += 2 * p;
            }
        }
    });
    let tail = (limit % 64) as u32 + 1;
    if tail < 64 {
        *words.last_mut().expect("nonempty") &= (1u64 << tail) - 1;
    }
    let count = bits::popcount(&words);
    Ok(PrimeSieve { limit, words, count })
}

impl PrimeSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes up to the limit.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// # Panics
    /// If `n` exceeds the sieve limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} is beyond the sieve limit {}", self.limit);
        self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        bits::ones(&self.words).map(|i| i as u64)
    }

    /// The 64 primality bits for `start..start + 64`, zero past the limit.
    pub(crate) fn window(&self, start: u64) -> u64 {
        let w = (start / 64) as usize;
        let s = start % 64;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if s == 0 {
            return lo;
        }
        let hi = self.words.get(w + 1).copied().unwrap_or(0);
        (lo >> s) | (hi << (64 - s))
    }
}
