//! Exhaustive and randomized searches for MSTD subsets of a ground set.

mod baseline;
mod enumerate;
pub(crate) mod kernel;
mod minimal;
mod monte_carlo;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{MstdError, Result};
use crate::sets::{classify, IntSet};

pub use baseline::{baseline, Baseline, MIN_MSTD_CARDINALITY};
pub use minimal::minimal_mstd_in;

use enumerate::{Plan, Visit};
use kernel::SubsetKernel;

pub const DEFAULT_HIT_CAP: usize = 1000;
pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    FirstHit,
    CountAll,
    MinimizeMaxElement,
    MinimizeDiameter,
}

/// Which subsets count as hits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    Mstd,
    /// `|S+S| - |S-S| >= |S|`.
    Special,
}

impl Filter {
    #[inline]
    pub(crate) fn accepts(self, sums: u64, diffs: u64, size: usize) -> bool {
        match self {
            Filter::Mstd => sums > diffs,
            Filter::Special => sums as i64 - diffs as i64 >= size as i64 && size > 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub ground: IntSet,
    pub min_size: usize,
    pub max_size: usize,
    pub budget: u64,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub objective: Objective,
    pub filter: Filter,
    /// Skip subsets ruled out by the pruning facts in [`Baseline`].
    pub prune: bool,
    pub hit_cap: usize,
}

impl SearchConfig {
    /// Exhaustive, count-all, no pruning, every size.
    pub fn exhaustive(ground: IntSet) -> Self {
        let n = ground.len();
        SearchConfig {
            ground,
            min_size: 1,
            max_size: n,
            budget: DEFAULT_BUDGET,
            mode: Mode::Exhaustive,
            samples: 0,
            seed: 0,
            objective: Objective::CountAll,
            filter: Filter::Mstd,
            prune: false,
            hit_cap: DEFAULT_HIT_CAP,
        }
    }

    pub fn monte_carlo(ground: IntSet, samples: u64, seed: u64) -> Self {
        SearchConfig {
            mode: Mode::MonteCarlo,
            samples,
            seed,
            ..Self::exhaustive(ground)
        }
    }

    pub fn sizes(mut self, min_size: usize, max_size: usize) -> Self {
        self.min_size = min_size;
        self.max_size = max_size;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn prune(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }
}

fn serialize_hits<S: serde::Serializer>(hits: &[IntSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(hits.len()))?;
    for h in hits {
        seq.serialize_element(h.elements())?;
    }
    seq.end()
}

fn deserialize_hits<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<IntSet>, D::Error> {
    let raw: Vec<Vec<u64>> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|v| IntSet::new(v).map_err(serde::de::Error::custom))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(serialize_with = "serialize_hits", deserialize_with = "deserialize_hits")]
    pub hits: Vec<IntSet>,
    pub hit_count: u64,
    pub examined: u64,
    pub density: Option<f64>,
    pub stderr: Option<f64>,
    pub exhausted: bool,
    pub seed: Option<u64>,
    /// Pruning rules that were active, with their provenance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pruning: Vec<String>,
    /// For minimization objectives: whether every candidate that could beat
    /// the best hit was examined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal: Option<bool>,
    /// For minimization objectives: the best objective value found.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best: Option<u64>,
}

impl SearchReport {
    pub(crate) fn empty(exhausted: bool) -> Self {
        SearchReport {
            hits: Vec::new(),
            hit_count: 0,
            examined: 0,
            density: None,
            stderr: None,
            exhausted,
            seed: None,
            pruning: Vec::new(),
            optimal: None,
            best: None,
        }
    }
}

fn validate(cfg: &SearchConfig) -> Result<()> {
    if cfg.mode == Mode::MonteCarlo && cfg.samples == 0 {
        return Err(MstdError::domain("monte-carlo mode needs at least one sample"));
    }
    Ok(())
}

/// Pruning rules applied when `cfg.prune` is set.
pub(crate) fn pruning_labels(base: &Baseline) -> Vec<String> {
    vec![
        format!(
            "min-diameter-{}: established by exhaustive baseline over subsets of {{0..{}}} ({} subsets)",
            base.min_diameter,
            base.min_diameter,
            base.examined
        ),
        format!("min-cardinality-{MIN_MSTD_CARDINALITY}: known result on the smallest MSTD set"),
    ]
}

/// Enumerates subsets of the ground in a fixed order: popcount ascending, then
/// increasing index bitmask. Hits are subsets accepted by `cfg.filter`.
pub fn exhaustive_search(cfg: &SearchConfig) -> Result<SearchReport> {
    validate(cfg)?;
    match cfg.objective {
        Objective::MinimizeMaxElement | Objective::MinimizeDiameter => {
            return minimal_mstd_in(&cfg.ground, cfg.objective, cfg.budget);
        }
        _ => {}
    }
    if cfg.mode == Mode::MonteCarlo {
        return Ok(run_monte_carlo(cfg));
    }
    let (report, _) = run_exhaustive(cfg)?;
    Ok(report)
}

fn run_exhaustive(cfg: &SearchConfig) -> Result<(SearchReport, Option<enumerate::Enumeration>)> {
    let n = cfg.ground.len();
    let max_size = cfg.max_size.min(n);
    let min_size = cfg.min_size.max(1);
    if min_size > max_size {
        return Ok((SearchReport::empty(true), None));
    }
    if n > 63 {
        return Err(MstdError::domain(format!(
            "exhaustive enumeration supports at most 63 ground elements, got {n}"
        )));
    }
    let base = baseline();
    let ground = cfg.ground.elements();
    let filter = cfg.filter;
    let prune = cfg.prune;
    let plan = Plan {
        n: n as u32,
        min_size: min_size as u32,
        max_size: max_size as u32,
        budget: cfg.budget,
        stop_at_first: cfg.objective == Objective::FirstHit,
        hit_cap: cfg.hit_cap,
    };
    let kernel = SubsetKernel::for_ground(&cfg.ground);
    let run = enumerate::run(&plan, &kernel, |k, mask| {
        let size = mask.count_ones() as usize;
        if prune {
            let lo = ground[mask.trailing_zeros() as usize];
            let hi = ground[63 - mask.leading_zeros() as usize];
            if hi - lo < base.min_diameter || size < MIN_MSTD_CARDINALITY {
                return Visit::Pruned;
            }
        }
        let (s, d) = k.counts_mask(mask);
        if filter.accepts(s, d, size) {
            Visit::Hit
        } else {
            Visit::Miss
        }
    });
    let report = SearchReport {
        hits: run.hits.iter().map(|&m| cfg.ground.subset_by_mask(m)).collect(),
        hit_count: run.hit_count,
        examined: run.examined,
        density: None,
        stderr: None,
        exhausted: run.exhausted,
        seed: None,
        pruning: if prune { pruning_labels(base) } else { Vec::new() },
        optimal: None,
        best: None,
    };
    Ok((report, Some(run)))
}

fn run_monte_carlo(cfg: &SearchConfig) -> SearchReport {
    let filter = cfg.filter;
    let out = monte_carlo::sample(
        &cfg.ground,
        cfg.samples,
        cfg.seed,
        cfg.min_size,
        cfg.max_size,
        cfg.hit_cap,
        move |s, d, size| filter.accepts(s, d, size),
    );
    let p = out.hit_count as f64 / cfg.samples as f64;
    SearchReport {
        hits: out.hits,
        hit_count: out.hit_count,
        examined: cfg.samples,
        density: Some(p),
        stderr: Some((p * (1.0 - p) / cfg.samples as f64).sqrt()),
        exhausted: false,
        seed: Some(cfg.seed),
        pruning: Vec::new(),
        optimal: None,
        best: None,
    }
}

/// MSTD density of `{0..n}` under uniform random subsets.
pub fn monte_carlo_density(n: u64, samples: u64, seed: u64) -> Result<SearchReport> {
    let cfg = SearchConfig::monte_carlo(IntSet::interval(n), samples, seed);
    exhaustive_search(&cfg)
}

/// Searches for special MSTD subsets.
///
/// Before the main engine, a structured pass checks the whole ground and then
/// its initial segments shortest first; the random and exhaustive engines
/// almost never reach these large sets on their own.
pub fn special_search(cfg: &SearchConfig) -> Result<SearchReport> {
    validate(cfg)?;
    let cfg = SearchConfig { filter: Filter::Special, ..cfg.clone() };
    let n = cfg.ground.len();
    let max_size = cfg.max_size.min(n);
    let min_size = cfg.min_size.max(1);
    if min_size > max_size {
        return Ok(SearchReport::empty(true));
    }

    let mut structured: Vec<usize> = Vec::new();
    let mut examined = 0u64;
    let mut lengths: Vec<usize> = vec![n];
    lengths.extend(min_size..n);
    for len in lengths {
        if len < min_size || len > max_size || examined >= cfg.budget {
            continue;
        }
        examined += 1;
        let seg = IntSet::new(cfg.ground.elements()[..len].to_vec())?;
        if classify(&seg)?.special {
            structured.push(len);
            if cfg.objective == Objective::FirstHit {
                break;
            }
        }
    }
    let segment = |len: usize| IntSet::new(cfg.ground.elements()[..len].to_vec()).expect("prefix of a valid set");

    if cfg.objective == Objective::FirstHit && !structured.is_empty() {
        let mut r = SearchReport::empty(false);
        r.hits = vec![segment(structured[0])];
        r.hit_count = 1;
        r.examined = examined;
        return Ok(r);
    }

    let rest = SearchConfig { budget: cfg.budget - examined, ..cfg.clone() };
    let mut report = match cfg.mode {
        Mode::MonteCarlo => run_monte_carlo(&rest),
        Mode::Exhaustive if n <= 63 => {
            let (mut r, run) = run_exhaustive(&rest)?;
            if let Some(run) = run {
                // structured hits the enumeration never reached still count
                let unvisited = structured
                    .iter()
                    .filter(|&&len| !run.visited((1u64 << len) - 1, min_size as u32))
                    .count();
                r.hit_count += unvisited as u64;
            }
            r
        }
        Mode::Exhaustive => {
            let mut r = SearchReport::empty(false);
            r.hit_count = structured.len() as u64;
            r
        }
    };
    report.examined += examined;

    let mut seen: HashSet<IntSet> = HashSet::new();
    let mut hits = Vec::new();
    for h in structured.into_iter().map(segment).chain(report.hits.drain(..)) {
        if hits.len() < cfg.hit_cap && seen.insert(h.clone()) {
            hits.push(h);
        }
    }
    report.hits = hits;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{base_expansion, Verdict};

    #[test]
    fn no_mstd_below_size_eight_in_0_14() {
        let cfg = SearchConfig::exhaustive(IntSet::interval(14)).sizes(1, 7);
        let r = exhaustive_search(&cfg).unwrap();
        assert_eq!(r.hit_count, 0);
        assert!(r.exhausted);
        let expected: u64 = (1..=7).map(|k| enumerate::binomial(15, k)).sum();
        assert_eq!(r.examined, expected);
    }

    #[test]
    fn conway_among_size_eight_hits() {
        let cfg = SearchConfig::exhaustive(IntSet::interval(14)).sizes(8, 8);
        let r = exhaustive_search(&cfg).unwrap();
        assert!(r.hits.contains(&IntSet::conway()));
        for h in &r.hits {
            assert_eq!(classify(h).unwrap().verdict, Verdict::Mstd);
        }
    }

    #[test]
    fn interval_0_7_has_none() {
        let r = exhaustive_search(&SearchConfig::exhaustive(IntSet::interval(7))).unwrap();
        assert_eq!((r.hit_count, r.examined), (0, 255));
    }

    #[test]
    fn first_hit_stops_in_order() {
        let cfg = SearchConfig::exhaustive(IntSet::interval(14)).objective(Objective::FirstHit);
        let r = exhaustive_search(&cfg).unwrap();
        assert_eq!(r.hit_count, 1);
        assert!(!r.exhausted);
        // everything below size 8 is visited first
        let below: u64 = (1..=7).map(|k| enumerate::binomial(15, k)).sum();
        assert!(r.examined > below && r.examined <= below + enumerate::binomial(15, 8));
        let full = exhaustive_search(&SearchConfig::exhaustive(IntSet::interval(14))).unwrap();
        assert_eq!(full.hits[0], r.hits[0]);
    }

    #[test]
    fn budget_truncates_deterministically() {
        let cfg = SearchConfig::exhaustive(IntSet::interval(14)).budget(1000);
        let r = exhaustive_search(&cfg).unwrap();
        assert_eq!(r.examined, 1000);
        assert!(!r.exhausted);
        assert_eq!(r, exhaustive_search(&cfg).unwrap());
    }

    #[test]
    fn pruning_keeps_hits_and_reports_rules() {
        let plain = exhaustive_search(&SearchConfig::exhaustive(IntSet::interval(16))).unwrap();
        let pruned = exhaustive_search(&SearchConfig::exhaustive(IntSet::interval(16)).prune(true)).unwrap();
        assert_eq!(plain.hit_count, pruned.hit_count);
        assert_eq!(plain.hits, pruned.hits);
        assert_eq!(pruned.pruning.len(), 2);
        assert!(plain.pruning.is_empty());
    }

    #[test]
    fn oversized_ground_is_rejected_for_enumeration() {
        let cfg = SearchConfig::exhaustive(IntSet::interval(70));
        assert!(exhaustive_search(&cfg).is_err());
    }

    #[test]
    fn special_search_examples() {
        let s3 = base_expansion(&IntSet::conway(), 3).unwrap();
        let cfg = SearchConfig::exhaustive(s3.clone()).budget(10_000);
        let r = special_search(&cfg).unwrap();
        assert_eq!(r.hits[0], s3);
        assert_eq!(classify(&r.hits[0]).unwrap().gap, 1951);

        let r = special_search(&SearchConfig::exhaustive(IntSet::interval(14))).unwrap();
        assert_eq!(r.hit_count, 0);
        assert!(r.exhausted);

        let cfg = SearchConfig::exhaustive(IntSet::interval(5)).sizes(7, 9);
        let r = special_search(&cfg).unwrap();
        assert_eq!(r.hit_count, 0);
        assert!(r.exhausted);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let a = monte_carlo_density(30, 100_000, 7).unwrap();
        let b = monte_carlo_density(30, 100_000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(7));
        let c = monte_carlo_density(30, 100_000, 8).unwrap();
        assert_eq!(c.examined, 100_000);
        for h in &a.hits {
            assert!(classify(h).unwrap().is_mstd());
        }
    }

    #[test]
    fn monte_carlo_general_path_matches_interval_path() {
        // a translated interval goes through the interval fast path; a
        // non-interval ground with the same structure goes through the kernel
        let g = IntSet::interval(20);
        let r = exhaustive_search(&SearchConfig::monte_carlo(g, 50_000, 3)).unwrap();
        let mut e: Vec<u64> = (0..=20).collect();
        e.push(1000);
        let g2 = IntSet::new(e).unwrap();
        let r2 = exhaustive_search(&SearchConfig::monte_carlo(g2, 50_000, 3)).unwrap();
        assert!(r.density.unwrap() >= 0.0 && r2.density.unwrap() >= 0.0);
        for h in r2.hits.iter().chain(&r.hits) {
            assert!(classify(h).unwrap().is_mstd());
        }
    }

    #[test]
    fn monte_carlo_requires_samples() {
        assert!(monte_carlo_density(10, 0, 1).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = exhaustive_search(&SearchConfig::exhaustive(IntSet::interval(14)).sizes(8, 8)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v["hits"][0].is_array());
        for key in ["hit_count", "examined", "density", "stderr", "exhausted", "seed"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let back: SearchReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
