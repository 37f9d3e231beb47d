use serde::{Deserialize, Serialize};

use super::sieve::{sieve, PrimeSieve};
use super::tuple::{match_tuple_capped, PrimeTuple};
use crate::error::{MstdError, Result};
use crate::sets::IntSet;

/// Default ceiling on the last term when searching for prime APs.
pub const DEFAULT_AP_MAX_LAST_TERM: u64 = 100_000_000;
/// Shortest AP containing an affine image of the Conway set.
pub const MIN_AP_FOR_CONWAY: u64 = 15;

/// `{p + s·c : c ∈ K}` for the Conway set `K`, always MSTD.
pub fn dilated_conway(p: u64, s: u64) -> Result<IntSet> {
    if s == 0 {
        return Err(MstdError::domain("dilation factor s must be positive"));
    }
    IntSet::conway().affine(s, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeAp {
    pub first: u64,
    pub difference: u64,
    pub length: u64,
}

impl PrimeAp {
    pub fn last(&self) -> u64 {
        self.first + (self.length - 1) * self.difference
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.length).map(|i| self.first + i * self.difference)
    }
}

/// The Conway set read off an AP of at least 15 terms.
pub fn mstd_in_ap(ap: &PrimeAp) -> Result<IntSet> {
    if ap.length < MIN_AP_FOR_CONWAY {
        return Err(MstdError::domain(format!(
            "an AP of length {} is too short; at least {MIN_AP_FOR_CONWAY} terms are needed",
            ap.length
        )));
    }
    dilated_conway(ap.first, ap.difference)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApSearch {
    pub length: u64,
    pub start_bound: u64,
    /// Every AP with last term up to this bound was considered.
    pub max_last_term: u64,
    pub found: Option<PrimeAp>,
}

/// Step every difference must be a multiple of: the product of primes below
/// `length`. A prime `q < length` not dividing the difference would divide at
/// least two terms.
fn base_step(length: u64) -> u64 {
    (2..length)
        .filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0))
        .try_fold(1u64, |acc, q| acc.checked_mul(q))
        .unwrap_or(u64::MAX)
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The prime AP of `length` terms with first term at most `start_bound` that
/// has the smallest last term (ties: smallest first term), searched up to
/// [`DEFAULT_AP_MAX_LAST_TERM`].
pub fn find_prime_ap(length: u64, start_bound: u64) -> Result<Option<PrimeAp>> {
    Ok(find_prime_ap_within(length, start_bound, DEFAULT_AP_MAX_LAST_TERM)?.found)
}

/// As [`find_prime_ap`] with an explicit ceiling on the last term. The sieve
/// grows geometrically, so the work tracks the answer rather than the ceiling.
pub fn find_prime_ap_within(length: u64, start_bound: u64, max_last_term: u64) -> Result<ApSearch> {
    if length == 0 {
        return Err(MstdError::domain("AP length must be at least 1"));
    }
    let report = |found, upto| ApSearch { length, start_bound, max_last_term: upto, found };
    if length == 1 {
        let found = (start_bound >= 2 && max_last_term >= 2).then_some(PrimeAp { first: 2, difference: 0, length: 1 });
        return Ok(report(found, max_last_term));
    }
    let step = base_step(length);
    let mut limit = (1u64 << 16).min(max_last_term);
    loop {
        let s = sieve(limit)?;
        if let Some(ap) = best_within(&s, length, start_bound, step) {
            return Ok(report(Some(ap), limit));
        }
        if limit >= max_last_term {
            return Ok(report(None, limit));
        }
        limit = limit.saturating_mul(8).min(max_last_term);
    }
}

fn best_within(s: &PrimeSieve, length: u64, start_bound: u64, step: u64) -> Option<PrimeAp> {
    let limit = s.limit();
    let k = length - 1;
    let ok = |first: u64, d: u64| (1..length).all(|i| s.is_prime(first + i * d));
    let mut best: Option<PrimeAp> = None;
    let consider = |best: &mut Option<PrimeAp>, ap: PrimeAp| {
        if best.is_none_or(|b| (ap.last(), ap.first) < (b.last(), b.first)) {
            *best = Some(ap);
        }
    };
    // first term equal to the length itself is exempt from its own factor
    if is_small_prime(length) && length <= start_bound {
        let mut d = step;
        while length + k * d <= limit {
            if ok(length, d) {
                consider(&mut best, PrimeAp { first: length, difference: d, length });
                break;
            }
            d += step;
        }
    }
    let step = if is_small_prime(length) { step.saturating_mul(length) } else { step };
    let mut d = step;
    while k.checked_mul(d).is_some_and(|kd| kd < limit) {
        if best.is_some_and(|b| 2 + k * d > b.last()) {
            break;
        }
        let top = start_bound.min(limit - k * d);
        for first in s.primes().take_while(|&p| p <= top) {
            if ok(first, d) {
                consider(&mut best, PrimeAp { first, difference: d, length });
                break;
            }
        }
        d += step;
    }
    best
}

/// MSTD subsets of the primes from matches of the `30·K` tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeMstdReport {
    pub x: u64,
    pub tuple: PrimeTuple,
    pub count: u64,
    pub sets: Vec<IntSet>,
}

/// Matches `n <= x` of the `30·K` tuple and the MSTD sets `n + 30K` they give.
pub fn prime_mstd_sets(x: u64, cap: usize) -> Result<PrimeMstdReport> {
    let t = PrimeTuple::conway_30();
    let r = match_tuple_capped(&t, x, cap)?;
    let sets = r.matches.iter().map(|&n| dilated_conway(n, 30)).collect::<Result<Vec<_>>>()?;
    Ok(PrimeMstdReport { x, tuple: t, count: r.count, sets })
}
