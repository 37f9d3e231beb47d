//! Named claims with pinned parameters, read from the checked-in
//! `claims.toml`, each checked end to end through the library.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{MstdError, Result};
use crate::primes::{self, PrimeTuple};
use crate::search::{exhaustive_search, monte_carlo_density, SearchConfig};
use crate::sequences::{self, NoMstdVerdict, SequenceSpec};
use crate::sets::{self, IntSet, Verdict};

pub const MANIFEST: &str = include_str!("../claims.toml");

pub const CLAIM_IDS: [&str; 8] = [
    "conway-counts",
    "min-size-8",
    "fib-no-mstd",
    "s3-special",
    "tuple-T-admissible",
    "p19-prime-mstd",
    "density-4.5e-4",
    "hl-twin-ratio",
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(rename = "conway-counts")]
    pub conway_counts: ConwayCounts,
    #[serde(rename = "min-size-8")]
    pub min_size_8: MinSize,
    #[serde(rename = "fib-no-mstd")]
    pub fib_no_mstd: FibNoMstd,
    #[serde(rename = "s3-special")]
    pub s3_special: Special,
    #[serde(rename = "tuple-T-admissible")]
    pub tuple_t_admissible: TupleAdmissible,
    #[serde(rename = "p19-prime-mstd")]
    pub p19_prime_mstd: PrimeMstd,
    #[serde(rename = "density-4.5e-4")]
    pub density: Density,
    #[serde(rename = "hl-twin-ratio")]
    pub hl_twin_ratio: TwinRatio,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConwayCounts {
    pub set: Vec<u64>,
    pub sum_count: u64,
    pub diff_count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinSize {
    pub ground_max: u64,
    pub below_size: usize,
    pub witness: Vec<u64>,
    pub empty_ground_max: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FibNoMstd {
    pub window: usize,
    pub upto: usize,
    pub exhaustive_terms: usize,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Special {
    pub set: Vec<u64>,
    pub power: u32,
    pub cardinality: usize,
    pub sum_count: u64,
    pub diff_count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleAdmissible {
    pub offsets: Vec<i64>,
    pub moduli: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimeMstd {
    pub offsets: Vec<i64>,
    pub x: u64,
    pub p: u64,
    pub scale: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Density {
    pub n: u64,
    pub samples: u64,
    pub seed: u64,
    pub low: f64,
    pub high: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwinRatio {
    pub offsets: Vec<i64>,
    pub x: u64,
    pub low: f64,
    pub high: f64,
}

impl Manifest {
    pub fn pinned() -> Self {
        toml::from_str(MANIFEST).expect("checked-in manifest parses")
    }
}

/// Overrides accepted by the stochastic claim.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub pass: bool,
    pub params: Value,
    pub measured: Value,
    pub elapsed_ms: u128,
}

pub fn reproduce(id: &str, overrides: Overrides) -> Result<ClaimReport> {
    let m = Manifest::pinned();
    let started = Instant::now();
    let (pass, params, measured) = match id {
        "conway-counts" => conway_counts(&m.conway_counts)?,
        "min-size-8" => min_size(&m.min_size_8)?,
        "fib-no-mstd" => fib_no_mstd(&m.fib_no_mstd)?,
        "s3-special" => special(&m.s3_special)?,
        "tuple-T-admissible" => tuple_admissible(&m.tuple_t_admissible)?,
        "p19-prime-mstd" => prime_mstd(&m.p19_prime_mstd)?,
        "density-4.5e-4" => {
            let mut d = m.density.clone();
            d.samples = overrides.samples.unwrap_or(d.samples);
            d.seed = overrides.seed.unwrap_or(d.seed);
            density(&d)?
        }
        "hl-twin-ratio" => twin_ratio(&m.hl_twin_ratio)?,
        other => {
            return Err(MstdError::Parse(format!(
                "unknown claim id {other:?}; expected one of {}",
                CLAIM_IDS.join(", ")
            )))
        }
    };
    Ok(ClaimReport { id: id.to_string(), pass, params, measured, elapsed_ms: started.elapsed().as_millis() })
}

type Outcome = (bool, Value, Value);

fn conway_counts(c: &ConwayCounts) -> Result<Outcome> {
    let cl = sets::classify(&IntSet::new(c.set.clone())?)?;
    let pass = cl.sum_count == c.sum_count && cl.diff_count == c.diff_count && cl.verdict == Verdict::Mstd;
    Ok((pass, json!(c), json!(cl)))
}

fn min_size(c: &MinSize) -> Result<Outcome> {
    let ground = IntSet::interval(c.ground_max);
    let small = exhaustive_search(&SearchConfig::exhaustive(ground.clone()).sizes(1, c.below_size))?;
    let next = c.below_size + 1;
    let at_next = exhaustive_search(&SearchConfig::exhaustive(ground).sizes(next, next))?;
    let witness = IntSet::new(c.witness.clone())?;
    let empty = exhaustive_search(&SearchConfig::exhaustive(IntSet::interval(c.empty_ground_max)))?;
    let pass = small.exhausted
        && small.hit_count == 0
        && at_next.hits.contains(&witness)
        && empty.exhausted
        && empty.hit_count == 0;
    let measured = json!({
        "hits_below": small.hit_count,
        "hits_at_next_size": at_next.hit_count,
        "witness_found": at_next.hits.contains(&witness),
        "hits_in_small_ground": empty.hit_count,
    });
    Ok((pass, json!(c), measured))
}

fn fib_no_mstd(c: &FibNoMstd) -> Result<Outcome> {
    let cert = sequences::certify_no_mstd(&SequenceSpec::Fibonacci, c.window, c.upto, c.budget)?;
    let prefix = IntSet::new(sequences::materialize(&SequenceSpec::Fibonacci, c.exhaustive_terms)?)?;
    let rep = exhaustive_search(&SearchConfig::exhaustive(prefix))?;
    let pass = cert.verdict == NoMstdVerdict::CertifiedNoMstd && rep.exhausted && rep.hit_count == 0;
    let measured = json!({
        "verdict": cert.verdict,
        "exhaustive_examined": rep.examined,
        "exhaustive_hits": rep.hit_count,
    });
    Ok((pass, json!(c), measured))
}

fn special(c: &Special) -> Result<Outcome> {
    let s = sets::base_expansion(&IntSet::new(c.set.clone())?, c.power)?;
    let cl = sets::classify(&s)?;
    let pass = s.len() == c.cardinality && cl.sum_count == c.sum_count && cl.diff_count == c.diff_count && cl.special;
    let measured = json!({
        "cardinality": s.len(),
        "sum_count": cl.sum_count,
        "diff_count": cl.diff_count,
        "special": cl.special,
    });
    Ok((pass, json!(c), measured))
}

fn tuple_admissible(c: &TupleAdmissible) -> Result<Outcome> {
    let r = primes::is_admissible(&PrimeTuple::new(&c.offsets)?);
    let pass = r.admissible && r.checked_moduli == c.moduli;
    Ok((pass, json!(c), json!(r)))
}

fn prime_mstd(c: &PrimeMstd) -> Result<Outcome> {
    let r = primes::match_tuple(&PrimeTuple::new(&c.offsets)?, c.x)?;
    let set = primes::dilated_conway(c.p, c.scale)?;
    let cl = sets::classify(&set)?;
    let sieve = primes::sieve(set.max().unwrap_or(0))?;
    let all_prime = set.elements().iter().all(|&q| sieve.is_prime(q));
    let pass = r.matches.contains(&c.p) && cl.is_mstd() && all_prime;
    let measured = json!({
        "matched": r.matches.contains(&c.p),
        "match_count": r.count,
        "set": set.elements(),
        "verdict": cl.verdict,
        "all_prime": all_prime,
    });
    Ok((pass, json!(c), measured))
}

fn density(c: &Density) -> Result<Outcome> {
    let r = monte_carlo_density(c.n, c.samples, c.seed)?;
    let d = r.density.unwrap_or(0.0);
    let pass = (c.low..=c.high).contains(&d);
    let measured = json!({ "density": d, "stderr": r.stderr, "hit_count": r.hit_count, "seed": r.seed });
    Ok((pass, json!(c), measured))
}

fn twin_ratio(c: &TwinRatio) -> Result<Outcome> {
    let r = primes::match_tuple(&PrimeTuple::new(&c.offsets)?, c.x)?;
    let ratio = r.ratio.unwrap_or(0.0);
    let pass = (c.low..=c.high).contains(&ratio);
    let measured = json!({
        "count": r.count,
        "predicted": r.predicted,
        "singular_series": r.singular_series,
        "ratio": ratio,
    });
    Ok((pass, json!(c), measured))
}
