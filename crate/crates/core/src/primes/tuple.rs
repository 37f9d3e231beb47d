use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sieve::{sieve, PrimeSieve};
use crate::error::{MstdError, Result};
use crate::sets::CONWAY;

pub const DEFAULT_MATCH_CAP: usize = 1000;
/// Relative tolerance of the singular series used for match predictions.
pub const PREDICTION_SERIES_TOL: f64 = 1e-3;
/// Relative tolerance of the prediction integral.
pub const INTEGRAL_REL_TOL: f64 = 1e-6;

/// Offsets `0 = b_1 < b_2 < ... < b_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTuple", into = "RawTuple")]
pub struct PrimeTuple {
    offsets: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawTuple {
    offsets: Vec<i64>,
}

impl TryFrom<RawTuple> for PrimeTuple {
    type Error = MstdError;
    fn try_from(raw: RawTuple) -> Result<Self> {
        PrimeTuple::new(&raw.offsets)
    }
}

impl From<PrimeTuple> for RawTuple {
    fn from(t: PrimeTuple) -> Self {
        RawTuple { offsets: t.offsets.iter().map(|&b| b as i64).collect() }
    }
}

impl PrimeTuple {
    /// Strictly increasing offsets, translated so the first is 0.
    pub fn new(offsets: &[i64]) -> Result<Self> {
        let Some(&first) = offsets.first() else {
            return Err(MstdError::domain("a tuple needs at least one offset"));
        };
        if let Some(w) = offsets.windows(2).find(|w| w[1] <= w[0]) {
            return Err(MstdError::domain(format!(
                "tuple offsets must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let offsets: Vec<u64> = offsets.iter().map(|&b| (b as i128 - first as i128) as u64).collect();
        if offsets.last().is_some_and(|&s| s >= 1 << 40) {
            return Err(MstdError::domain("tuple span must be below 2^40"));
        }
        Ok(PrimeTuple { offsets })
    }

    /// `30·K` for the Conway set `K`: matches `n` give the MSTD sets `n + 30K`
    /// of primes.
    pub fn conway_30() -> Self {
        PrimeTuple { offsets: CONWAY.iter().map(|&x| 30 * x).collect() }
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn arity(&self) -> usize {
        self.offsets.len()
    }

    pub fn span(&self) -> u64 {
        *self.offsets.last().expect("nonempty")
    }

    /// Number of distinct residues of the offsets mod `p`.
    pub fn residues(&self, p: u64) -> u64 {
        if p > self.arity() as u64 {
            let mut r: Vec<u64> = self.offsets.iter().map(|b| b % p).collect();
            r.sort_unstable();
            r.dedup();
            return r.len() as u64;
        }
        let mut seen = vec![false; p as usize];
        for b in &self.offsets {
            seen[(b % p) as usize] = true;
        }
        seen.iter().filter(|&&s| s).count() as u64
    }
}

impl fmt::Display for PrimeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.offsets.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for PrimeTuple {
    type Err = MstdError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let offsets = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| MstdError::Parse(format!("offset {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        PrimeTuple::new(&offsets)
    }
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityResult {
    pub tuple: PrimeTuple,
    pub admissible: bool,
    /// Smallest prime whose residues the offsets cover completely.
    pub witness_modulus: Option<u64>,
    pub checked_moduli: Vec<u64>,
}

/// A tuple is admissible when no modulus has all its residues covered. Only
/// primes `p <= m` need checking: `m` offsets cannot cover more than `m`
/// classes, and a composite modulus is covered only if one of its prime
/// factors is.
pub fn is_admissible(t: &PrimeTuple) -> AdmissibilityResult {
    let checked_moduli = primes_upto(t.arity() as u64);
    let witness_modulus = checked_moduli.iter().copied().find(|&p| t.residues(p) == p);
    AdmissibilityResult { tuple: t.clone(), admissible: witness_modulus.is_none(), witness_modulus, checked_moduli }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSeries {
    pub value: f64,
    /// Largest prime in the partial product.
    pub truncation_prime: u64,
    /// Bound on the relative error `|G - value| / value` from the omitted
    /// factors.
    pub tail_bound: f64,
    /// `v(p)` for each prime `p <= m`.
    pub per_prime_v: BTreeMap<u64, u64>,
}

/// The Hardy-Littlewood constant `G = Π_p (p/(p-1))^{m-1} (p-v(p))/(p-1)`,
/// to relative error `rel_tol`.
///
/// For `p >= 2m` past the span of the offsets, `v(p) = m` and with `x = 1/p`
/// the log of the factor is `Σ_{k>=2} (m - m^k) x^k / k`, at most `m²/p²` in
/// absolute value. The omitted tail then has log at most `m²/P`, and `P` is
/// the first bound with `e^{m²/P} - 1 < rel_tol`.
pub fn singular_series(t: &PrimeTuple, rel_tol: f64) -> Result<SingularSeries> {
    if !(rel_tol > 0.0 && rel_tol <= 0.1) {
        return Err(MstdError::domain(format!("rel_tol must lie in (0, 0.1], got {rel_tol}")));
    }
    let m = t.arity() as f64;
    let needed = (m * m / rel_tol.ln_1p()).ceil() as u64 + 1;
    singular_series_truncated(t, needed.max(min_truncation(t)))
}

fn min_truncation(t: &PrimeTuple) -> u64 {
    (2 * t.arity() as u64).max(t.span() + 1)
}

/// Partial product over primes `p <= truncation`, with the tail bound for
/// that cutoff. The cutoff must be at least `max(2m, span + 1)`.
pub fn singular_series_truncated(t: &PrimeTuple, truncation: u64) -> Result<SingularSeries> {
    let floor = min_truncation(t);
    if truncation < floor {
        return Err(MstdError::domain(format!("truncation prime must be at least {floor} for this tuple")));
    }
    let m = t.arity();
    let per_prime_v: BTreeMap<u64, u64> = primes_upto(m as u64).into_iter().map(|p| (p, t.residues(p))).collect();
    if m == 1 {
        return Ok(SingularSeries { value: 1.0, truncation_prime: 2, tail_bound: 0.0, per_prime_v });
    }
    if let Some((&p, _)) = per_prime_v.iter().find(|(&p, &v)| v == p) {
        return Ok(SingularSeries { value: 0.0, truncation_prime: p, tail_bound: 0.0, per_prime_v });
    }
    let s = sieve(truncation)?;
    let mf = m as f64;
    let mut log_sum = 0.0f64;
    let mut last = 2;
    for p in s.primes() {
        let v = if p > t.span() { m as u64 } else { t.residues(p) };
        let pf = p as f64;
        // (m-1)·ln(p/(p-1)) + ln((p-v)/(p-1))
        log_sum += -(mf - 1.0) * (-1.0 / pf).ln_1p() + (-(v as f64 - 1.0) / (pf - 1.0)).ln_1p();
        last = p;
    }
    Ok(SingularSeries {
        value: log_sum.exp(),
        truncation_prime: last,
        tail_bound: (mf * mf / truncation as f64).exp_m1(),
        per_prime_v,
    })
}

/// `∫_2^x du / (ln u)^m` to relative error `INTEGRAL_REL_TOL`, as
/// `∫ e^s / s^m ds` over `[ln 2, ln x]`.
pub fn log_power_integral(x: f64, m: u32) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    let f = |s: f64| s.exp() / s.powi(m as i32);
    let (a, b) = (2f64.ln(), x.ln());
    // coarse composite Simpson sets the absolute target
    let panels = 64;
    let h = (b - a) / panels as f64;
    let coarse: f64 = (0..panels)
        .map(|i| {
            let (l, r) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            simpson(&f, l, r)
        })
        .sum();
    let tol = INTEGRAL_REL_TOL * 0.1 * coarse.abs();
    (0..panels)
        .map(|i| {
            let (l, r) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            adaptive(&f, l, r, simpson(&f, l, r), tol / panels as f64, 40)
        })
        .sum()
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let c = 0.5 * (a + b);
    let (l, r) = (simpson(f, a, c), simpson(f, c, b));
    let delta = l + r - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return l + r + delta / 15.0;
    }
    adaptive(f, a, c, l, tol / 2.0, depth - 1) + adaptive(f, c, b, r, tol / 2.0, depth - 1)
}

/// Shifts `n ∈ [1, x]` with every `n + b_i` prime, against the
/// Hardy-Littlewood prediction `G·∫_2^x du/(ln u)^m`. With `b_1 = 0` each
/// counted shift is itself the smallest prime of its match.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub tuple: PrimeTuple,
    pub x: u64,
    /// First matches in increasing order, up to a cap.
    pub matches: Vec<u64>,
    pub count: u64,
    pub singular_series: f64,
    pub integral: f64,
    pub predicted: f64,
    /// `count / predicted`, absent when the prediction is 0.
    pub ratio: Option<f64>,
}

pub fn match_tuple(t: &PrimeTuple, x: u64) -> Result<MatchReport> {
    match_tuple_capped(t, x, DEFAULT_MATCH_CAP)
}

pub fn match_tuple_capped(t: &PrimeTuple, x: u64, cap: usize) -> Result<MatchReport> {
    if x < 2 {
        return Ok(MatchReport {
            tuple: t.clone(),
            x,
            matches: Vec::new(),
            count: 0,
            singular_series: 0.0,
            integral: 0.0,
            predicted: 0.0,
            ratio: None,
        });
    }
    let s = sieve(x + t.span())?;
    let (count, matches) = scan(&s, t.offsets(), x, cap);
    let g = singular_series(t, PREDICTION_SERIES_TOL)?.value;
    let integral = log_power_integral(x as f64, t.arity() as u32);
    let predicted = g * integral;
    Ok(MatchReport {
        tuple: t.clone(),
        x,
        matches,
        count,
        singular_series: g,
        integral,
        predicted,
        ratio: (predicted > 0.0).then(|| count as f64 / predicted),
    })
}

/// Word-parallel scan: bit `i` of the AND of shifted windows marks `n = base + i`.
fn scan(s: &PrimeSieve, offsets: &[u64], x: u64, cap: usize) -> (u64, Vec<u64>) {
    const CHUNK_WORDS: u64 = 4096;
    let words = x / 64 + 1;
    let chunks = words.div_ceil(CHUNK_WORDS);
    let parts: Vec<(u64, Vec<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut count = 0u64;
            let mut found = Vec::new();
            for w in c * CHUNK_WORDS..((c + 1) * CHUNK_WORDS).min(words) {
                let base = w * 64;
                let mut acc = offsets.iter().fold(!0u64, |acc, &b| acc & s.window(base + b));
                if w == 0 {
                    acc &= !1;
                }
                if base + 63 > x {
                    acc &= (1u64 << (x - base + 1)) - 1;
                }
                count += acc.count_ones() as u64;
                while acc != 0 && found.len() < cap {
                    found.push(base + acc.trailing_zeros() as u64);
                    acc &= acc - 1;
                }
            }
            (count, found)
        })
        .collect();
    let mut total = 0;
    let mut matches = Vec::new();
    for (c, f) in parts {
        total += c;
        matches.extend(f.into_iter().take(cap - matches.len()));
    }
    (total, matches)
}
