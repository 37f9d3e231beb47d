//! Infinite sequences and certificates about their MSTD subsets.
//!
//! A growth condition `a_k > a_{k-1} + a_{k-r}` forces each new element to add
//! more differences than sums, which rules out MSTD subsets (given no small
//! ones) or, in the window-3 form, limits them to finitely many (given no
//! special ones). Conditions over all `k` can only be checked on a prefix, so
//! certificates say "certified" only for the closed-form families whose growth
//! is decided exactly, and "consistent within budget" otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{MstdError, Result};
use crate::search::{
    exhaustive_search, minimal_mstd_in, special_search, Objective, SearchConfig, MIN_MSTD_CARDINALITY,
};
use crate::sets::{Arith, IntSet, MAX_ELEMENT};

pub const DEFAULT_CERTIFY_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// `0, 1, 2, 3, 5, 8, ...`: the Fibonacci numbers without the repeated 1.
    Fibonacci,
    /// `a_k = c·r^k + d` for `k >= 1`.
    ShiftedGeometric { c: u64, r: u64, d: u64 },
    /// `a_k = Σ coeffs[i]·a_{k-1-i}` after the listed seeds.
    LinearRecurrence { coeffs: Vec<i64>, seeds: Vec<u64> },
    Explicit { elements: Vec<u64> },
}

impl SequenceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::ShiftedGeometric { c, r, .. } => {
                if *c == 0 {
                    return Err(MstdError::domain("shifted geometric needs c != 0"));
                }
                if *r < 2 {
                    return Err(MstdError::domain("shifted geometric needs ratio r > 1"));
                }
            }
            SequenceSpec::LinearRecurrence { coeffs, seeds } => {
                if coeffs.is_empty() {
                    return Err(MstdError::domain("linear recurrence needs at least one coefficient"));
                }
                if seeds.len() < coeffs.len() {
                    return Err(MstdError::domain(format!(
                        "linear recurrence of order {} needs at least {} seeds",
                        coeffs.len(),
                        coeffs.len()
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Whether growth is decided exactly for all `k` rather than on a prefix.
    pub fn is_closed_form(&self) -> bool {
        matches!(self, SequenceSpec::Fibonacci | SequenceSpec::ShiftedGeometric { .. })
    }
}

fn overflow(k: usize) -> MstdError {
    MstdError::domain(format!("term {k} exceeds the supported maximum 2^62"))
}

fn bounded(k: usize, v: u128) -> Result<u64> {
    if v >= MAX_ELEMENT as u128 {
        Err(overflow(k))
    } else {
        Ok(v as u64)
    }
}

/// The first `n` terms `a_1, ..., a_n`, which must be strictly increasing.
pub fn materialize(spec: &SequenceSpec, n: usize) -> Result<Vec<u64>> {
    spec.validate()?;
    if n == 0 {
        return Err(MstdError::domain("need at least one term"));
    }
    let terms = match spec {
        SequenceSpec::Fibonacci => {
            let mut t: Vec<u64> = vec![0, 1, 2];
            while t.len() < n {
                let k = t.len();
                t.push(bounded(k + 1, t[k - 1] as u128 + t[k - 2] as u128)?);
            }
            t.truncate(n);
            t
        }
        SequenceSpec::ShiftedGeometric { c, r, d } => {
            let mut t = Vec::with_capacity(n);
            let mut power: u128 = 1;
            for k in 1..=n {
                power = power.checked_mul(*r as u128).ok_or_else(|| overflow(k))?;
                let v = power
                    .checked_mul(*c as u128)
                    .and_then(|v| v.checked_add(*d as u128))
                    .ok_or_else(|| overflow(k))?;
                t.push(bounded(k, v)?);
            }
            t
        }
        SequenceSpec::LinearRecurrence { coeffs, seeds } => {
            let mut t: Vec<u64> = seeds.iter().take(n).copied().collect();
            while t.len() < n {
                let k = t.len();
                let mut v: i128 = 0;
                for (i, &c) in coeffs.iter().enumerate() {
                    v += c as i128 * t[k - 1 - i] as i128;
                    if v.abs() >= 1i128 << 100 {
                        return Err(overflow(k + 1));
                    }
                }
                if v < 0 {
                    return Err(MstdError::domain(format!("term {} is negative ({v})", k + 1)));
                }
                t.push(bounded(k + 1, v as u128)?);
            }
            t
        }
        SequenceSpec::Explicit { elements } => {
            if elements.len() < n {
                return Err(MstdError::domain(format!(
                    "explicit sequence has {} terms, {n} requested",
                    elements.len()
                )));
            }
            elements[..n].to_vec()
        }
    };
    for k in 1..terms.len() {
        if terms[k] <= terms[k - 1] {
            return Err(MstdError::domain(format!(
                "sequence not strictly increasing at index {}: a_{} = {} <= a_{} = {}",
                k + 1,
                k + 1,
                terms[k],
                k,
                terms[k - 1]
            )));
        }
        if terms[k] >= MAX_ELEMENT {
            return Err(overflow(k + 1));
        }
    }
    Ok(terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthViolation {
    pub k: usize,
    pub a_k: u64,
    pub a_prev: u64,
    pub a_back: u64,
}

/// Result of checking `a_k > a_{k-1} + a_{k-window}` for `k` in
/// `[start, checked_upto]` (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCertificate {
    pub window: usize,
    pub start: usize,
    pub checked_upto: usize,
    pub holds: bool,
    pub first_violation: Option<GrowthViolation>,
    /// For closed-form kinds: whether the inequality holds for every
    /// `k >= start`. `None` when only the prefix was checked.
    pub holds_for_all_k: Option<bool>,
}

/// Growth condition with window `r`, checked on `k ∈ [r+1, upto]`.
pub fn check_growth(spec: &SequenceSpec, r: usize, upto: usize) -> Result<GrowthCertificate> {
    check_growth_from(spec, r, r + 1, upto)
}

/// Growth condition with window `r`, checked on `k ∈ [start, upto]`.
pub fn check_growth_from(spec: &SequenceSpec, r: usize, start: usize, upto: usize) -> Result<GrowthCertificate> {
    if r == 0 {
        return Err(MstdError::domain("window r must be positive"));
    }
    if start < r + 1 {
        return Err(MstdError::domain(format!("start index must be at least r+1 = {}", r + 1)));
    }
    if upto < start {
        return Err(MstdError::domain(format!("upto ({upto}) must be at least {start}")));
    }
    let a = materialize(spec, upto)?;
    // a[k-1] is a_k
    let first_violation = (start..=upto).find_map(|k| {
        let (a_k, a_prev, a_back) = (a[k - 1], a[k - 2], a[k - 1 - r]);
        (a_k as u128 <= a_prev as u128 + a_back as u128).then_some(GrowthViolation { k, a_k, a_prev, a_back })
    });
    Ok(GrowthCertificate {
        window: r,
        start,
        checked_upto: upto,
        holds: first_violation.is_none(),
        first_violation,
        holds_for_all_k: holds_for_all_k(spec, r, start),
    })
}

/// Exact decision of the growth condition for the closed-form families.
fn holds_for_all_k(spec: &SequenceSpec, w: usize, start: usize) -> Option<bool> {
    match *spec {
        // a_k = a_{k-1} + a_{k-2} for k >= 4, and a_{k-2} > a_{k-w} iff w > 2
        SequenceSpec::Fibonacci => Some(w >= 3 && start >= 4),
        // c·q^k + d > c·q^{k-1} + c·q^{k-w} + 2d  <=>  c·q^{k-w}·(q^w - q^{w-1} - 1) > d,
        // whose left side is nondecreasing in k
        SequenceSpec::ShiftedGeometric { c, r: q, d } => {
            let q = q as u128;
            let Some(qw) = q.checked_pow(w as u32) else {
                return Some(true);
            };
            let f = qw as i128 - (qw / q) as i128 - 1;
            if f <= 0 {
                return Some(false);
            }
            let lhs = q
                .checked_pow((start - w) as u32)
                .and_then(|p| p.checked_mul(c as u128))
                .and_then(|p| p.checked_mul(f as u128));
            Some(lhs.is_none_or(|v| v > d as u128))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoMstdVerdict {
    CertifiedNoMstd,
    ConsistentWithinBudget,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoMstdCertificate {
    pub spec: SequenceSpec,
    pub window: usize,
    pub upto: usize,
    /// Shifted geometric sequences are certified on `c·r^k`; MSTD status is
    /// translation invariant. This is the `d` that was removed.
    pub translated_by: u64,
    pub growth: GrowthCertificate,
    pub small_subset_bound: usize,
    pub small_search_exhausted: bool,
    pub small_search_rule: String,
    pub examined: u64,
    pub budget: u64,
    pub mstd_witness: Option<IntSet>,
    pub verdict: NoMstdVerdict,
}

/// Certifies that a sequence contains no MSTD subset: growth with window `r`
/// plus no MSTD subset of at most `2r + 1` elements.
///
/// If growth fails on the prefix, the prefix is searched for a witness
/// instead, smallest largest element first.
pub fn certify_no_mstd(spec: &SequenceSpec, r: usize, upto: usize, budget: u64) -> Result<NoMstdCertificate> {
    let (work_spec, translated_by) = match *spec {
        SequenceSpec::ShiftedGeometric { c, r: q, d } if d > 0 => (SequenceSpec::ShiftedGeometric { c, r: q, d: 0 }, d),
        _ => (spec.clone(), 0),
    };
    let growth = check_growth(&work_spec, r, upto)?;
    let prefix = IntSet::new(materialize(&work_spec, upto)?)?;
    let bound = 2 * r + 1;
    let mut examined = 0u64;
    let mut witness = None;

    let (small_search_exhausted, small_search_rule) = if bound < MIN_MSTD_CARDINALITY {
        (true, format!("known result: every MSTD set has at least {MIN_MSTD_CARDINALITY} elements"))
    } else if prefix.len() > 63 {
        (false, "prefix too long for exhaustive small-subset search".to_string())
    } else {
        let cfg = SearchConfig::exhaustive(prefix.clone())
            .sizes(MIN_MSTD_CARDINALITY, bound)
            .objective(Objective::FirstHit)
            .prune(true)
            .budget(budget);
        let rep = exhaustive_search(&cfg)?;
        examined += rep.examined;
        witness = rep.hits.into_iter().next();
        (
            rep.exhausted || witness.is_some(),
            format!("exhaustive over subsets of sizes {MIN_MSTD_CARDINALITY}..={bound} of the prefix"),
        )
    };

    if witness.is_none() && !growth.holds {
        let rep = minimal_mstd_in(&prefix, Objective::MinimizeMaxElement, budget.saturating_sub(examined))?;
        examined += rep.examined;
        witness = rep.hits.into_iter().next();
    }
    let witness = match witness {
        Some(w) if translated_by > 0 => Some(w.affine(1, translated_by)?),
        w => w,
    };

    let verdict = if witness.is_some() {
        NoMstdVerdict::Refuted
    } else if growth.holds && small_search_exhausted {
        if growth.holds_for_all_k == Some(true) && bound < MIN_MSTD_CARDINALITY {
            NoMstdVerdict::CertifiedNoMstd
        } else {
            NoMstdVerdict::ConsistentWithinBudget
        }
    } else {
        NoMstdVerdict::Inconclusive
    };
    Ok(NoMstdCertificate {
        spec: spec.clone(),
        window: r,
        upto,
        translated_by,
        growth,
        small_subset_bound: bound,
        small_search_exhausted,
        small_search_rule,
        examined,
        budget,
        mstd_witness: witness,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVerdict {
    Holds,
    Violated,
    HypothesisNotApplicable,
}

/// Counts for `S = S' ∪ {x}` against the bound `new_diffs >= |S| + 1 >= new_sums`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceBoundReport {
    /// `|S|`.
    pub k: usize,
    pub window: usize,
    pub new_sums: u64,
    pub new_diffs: u64,
    /// `x - s_{k-r} > s_{k-1} - s_1`: the new element clears the old diameter
    /// against every one of the first `k - r` elements.
    pub hypothesis_applicable: bool,
    /// Differences `±(x - s_i)` that exceed the old diameter.
    pub fresh_extreme_diffs: u64,
    /// `|S'-S'| - |S'+S'|` and `|S-S| - |S+S|`.
    pub surplus_before: i64,
    pub surplus_after: i64,
    pub verdict: BoundVerdict,
}

/// Appends `new_element` to `s_prime` and checks that it creates at least
/// `|S| + 1` new differences and at most `|S| + 1` new sums.
///
/// With `r = 3` this is also the step used for sequences with finitely many
/// MSTD subsets, where the three largest elements of `S'` come from the part
/// of the sequence satisfying the window-3 growth condition.
pub fn verify_difference_bound(s_prime: &IntSet, new_element: u64, r: usize) -> Result<DifferenceBoundReport> {
    if r == 0 {
        return Err(MstdError::domain("window r must be positive"));
    }
    let Some(max) = s_prime.max() else {
        return Err(MstdError::domain("S' must be nonempty"));
    };
    if new_element <= max {
        return Err(MstdError::domain(format!("new element {new_element} must exceed max(S') = {max}")));
    }
    let k = s_prime.len() + 1;
    if k < 2 * r + 2 {
        return Err(MstdError::domain(format!("|S'| + 1 = {k} is below 2r + 2 = {}", 2 * r + 2)));
    }
    let arith = Arith::default();
    let (s0, d0) = arith.counts(s_prime)?;
    let s = s_prime.with_element(new_element)?;
    let (s1, d1) = arith.counts(&s)?;
    let e = s.elements();
    // 1-based: s_1 = e[0], s_{k-1} = e[k-2], s_{k-r} = e[k-r-1]
    let old_diameter = e[k - 2] - e[0];
    let hypothesis_applicable = new_element - e[k - r - 1] > old_diameter;
    let fresh = e[..k - 1].iter().filter(|&&x| new_element - x > old_diameter).count() as u64;
    let (new_sums, new_diffs) = (s1 - s0, d1 - d0);
    let holds = new_diffs > k as u64 && k as u64 + 1 >= new_sums;
    Ok(DifferenceBoundReport {
        k,
        window: r,
        new_sums,
        new_diffs,
        hypothesis_applicable,
        fresh_extreme_diffs: 2 * fresh,
        surplus_before: d0 as i64 - s0 as i64,
        surplus_after: d1 as i64 - s1 as i64,
        verdict: match (hypothesis_applicable, holds) {
            (false, _) => BoundVerdict::HypothesisNotApplicable,
            (true, true) => BoundVerdict::Holds,
            (true, false) => BoundVerdict::Violated,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FinitenessVerdict {
    /// A special MSTD subset exists, so the sequence has infinitely many MSTD
    /// subsets.
    Refuted,
    ConsistentWithinBudget,
    /// Window-3 growth fails on `[s, upto]`.
    GrowthViolated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinitenessCertificate {
    pub spec: SequenceSpec,
    pub start: usize,
    pub upto: usize,
    pub growth: GrowthCertificate,
    pub special_witness: Option<IntSet>,
    pub examined: u64,
    pub budget: u64,
    pub search_exhausted: bool,
    pub verdict: FinitenessVerdict,
}

/// Checks the hypotheses that bound a sequence to finitely many MSTD subsets:
/// window-3 growth from index `s`, and no special MSTD subset. The second is
/// only falsifiable, so the prefix is searched for a special MSTD subset under
/// `special_search_budget`.
pub fn certify_finitely_many(
    spec: &SequenceSpec,
    s: usize,
    upto: usize,
    special_search_budget: u64,
) -> Result<FinitenessCertificate> {
    let growth = check_growth_from(spec, 3, s, upto)?;
    let prefix = IntSet::new(materialize(spec, upto)?)?;
    let cfg = SearchConfig::exhaustive(prefix)
        .objective(Objective::FirstHit)
        .budget(special_search_budget);
    let rep = special_search(&cfg)?;
    let special_witness = rep.hits.into_iter().next();
    let verdict = if special_witness.is_some() {
        FinitenessVerdict::Refuted
    } else if !growth.holds {
        FinitenessVerdict::GrowthViolated
    } else {
        FinitenessVerdict::ConsistentWithinBudget
    };
    Ok(FinitenessCertificate {
        spec: spec.clone(),
        start: s,
        upto,
        growth,
        special_witness,
        examined: rep.examined,
        budget: special_search_budget,
        search_exhausted: rep.exhausted,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{base_expansion, classify};

    fn geo(c: u64, r: u64, d: u64) -> SequenceSpec {
        SequenceSpec::ShiftedGeometric { c, r, d }
    }

    fn explicit(v: Vec<u64>) -> SequenceSpec {
        SequenceSpec::Explicit { elements: v }
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(materialize(&SequenceSpec::Fibonacci, 6).unwrap(), vec![0, 1, 2, 3, 5, 8]);
        assert_eq!(materialize(&geo(1, 3, 1), 4).unwrap(), vec![4, 10, 28, 82]);
        let rec = SequenceSpec::LinearRecurrence { coeffs: vec![1, 1], seeds: vec![0, 1] };
        match materialize(&rec, 5) {
            Err(MstdError::Domain(msg)) => assert!(msg.contains("index 3"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let rec = SequenceSpec::LinearRecurrence { coeffs: vec![1, 1], seeds: vec![1, 2] };
        assert_eq!(materialize(&rec, 6).unwrap(), vec![1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn materialize_errors() {
        assert!(materialize(&SequenceSpec::Fibonacci, 0).is_err());
        assert!(materialize(&geo(0, 3, 1), 3).is_err());
        assert!(materialize(&geo(1, 1, 1), 3).is_err());
        assert!(materialize(&explicit(vec![1, 2]), 3).is_err());
        assert!(materialize(&SequenceSpec::Fibonacci, 200).is_err());
        assert!(materialize(&geo(1, 10, 0), 30).is_err());
        let neg = SequenceSpec::LinearRecurrence { coeffs: vec![-3], seeds: vec![1] };
        assert!(materialize(&neg, 2).is_err());
        let short = SequenceSpec::LinearRecurrence { coeffs: vec![1, 1], seeds: vec![1] };
        assert!(materialize(&short, 3).is_err());
    }

    #[test]
    fn growth_examples() {
        let g = check_growth(&SequenceSpec::Fibonacci, 3, 50).unwrap();
        assert!(g.holds);
        assert_eq!(g.holds_for_all_k, Some(true));
        let g = check_growth(&geo(1, 2, 0), 3, 50).unwrap();
        assert!(g.holds);
        assert_eq!(g.holds_for_all_k, Some(true));
        let g = check_growth(&explicit(vec![1, 2, 3, 5, 8]), 1, 5).unwrap();
        assert!(!g.holds);
        assert_eq!(g.first_violation, Some(GrowthViolation { k: 2, a_k: 2, a_prev: 1, a_back: 1 }));
        assert_eq!(g.holds_for_all_k, None);
        assert!(check_growth(&SequenceSpec::Fibonacci, 3, 3).is_err());
    }

    #[test]
    fn closed_form_growth_matches_long_prefix() {
        for w in 1..6 {
            let g = check_growth(&SequenceSpec::Fibonacci, w, 80).unwrap();
            assert_eq!(g.holds_for_all_k, Some(g.holds), "fibonacci w={w}");
        }
        for (c, q, d) in [(1, 2, 0), (1, 2, 5), (3, 2, 100), (1, 3, 1), (2, 3, 5), (1, 5, 1000), (7, 2, 3)] {
            for w in 1..5 {
                let spec = geo(c, q, d);
                let g = check_growth(&spec, w, 22).unwrap();
                assert_eq!(g.holds_for_all_k, Some(g.holds), "{spec:?} w={w}");
            }
        }
        // large shift: fails early, holds eventually
        let g = check_growth_from(&geo(1, 2, 100), 3, 10, 40).unwrap();
        assert_eq!((g.holds, g.holds_for_all_k), (true, Some(true)));
        let g = check_growth(&geo(1, 2, 100), 3, 40).unwrap();
        assert_eq!((g.holds, g.holds_for_all_k), (false, Some(false)));
    }

    #[test]
    fn certify_examples() {
        let c = certify_no_mstd(&SequenceSpec::Fibonacci, 3, 40, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert_eq!(c.verdict, NoMstdVerdict::CertifiedNoMstd);
        let c = certify_no_mstd(&geo(2, 3, 5), 3, 30, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert_eq!(c.verdict, NoMstdVerdict::CertifiedNoMstd);
        assert_eq!(c.translated_by, 5);
        let c = certify_no_mstd(&explicit((0..=14).collect()), 3, 15, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert_eq!(c.verdict, NoMstdVerdict::Refuted);
        assert_eq!(c.mstd_witness, Some(IntSet::conway()));
    }

    #[test]
    fn certify_non_closed_forms_stay_within_budget() {
        let rec = SequenceSpec::LinearRecurrence { coeffs: vec![1, 1], seeds: vec![1, 2] };
        let c = certify_no_mstd(&rec, 3, 30, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert_eq!(c.verdict, NoMstdVerdict::ConsistentWithinBudget);

        // r = 4 needs an actual search over sizes 8 and 9
        let c = certify_no_mstd(&SequenceSpec::Fibonacci, 4, 20, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert!(c.small_search_exhausted);
        assert!(c.examined > 0);
        assert_eq!(c.verdict, NoMstdVerdict::ConsistentWithinBudget);

        // budget too small to finish the small-subset search
        let c = certify_no_mstd(&SequenceSpec::Fibonacci, 4, 30, 10).unwrap();
        assert_eq!(c.verdict, NoMstdVerdict::Inconclusive);
    }

    #[test]
    fn certify_refutation_keeps_original_coordinates() {
        let mut e: Vec<u64> = (0..=14).map(|x| x + 1000).collect();
        e.push(5000);
        let c = certify_no_mstd(&explicit(e), 3, 16, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert_eq!(c.mstd_witness, Some(IntSet::conway().affine(1, 1000).unwrap()));
    }

    #[test]
    fn difference_bound_examples() {
        let fib = materialize(&SequenceSpec::Fibonacci, 10).unwrap();
        let sp = IntSet::new(fib[..9].to_vec()).unwrap();
        let rep = verify_difference_bound(&sp, fib[9], 3).unwrap();
        assert!(rep.hypothesis_applicable);
        assert_eq!(rep.verdict, BoundVerdict::Holds);
        assert!(rep.new_diffs >= 11 && 11 >= rep.new_sums);
        assert!(rep.surplus_after > rep.surplus_before);

        let dense = IntSet::interval(13);
        let rep = verify_difference_bound(&dense, 14, 3).unwrap();
        assert_eq!(rep.verdict, BoundVerdict::HypothesisNotApplicable);

        let pow: Vec<u64> = (1..=8).map(|k| 3u64.pow(k)).collect();
        let rep = verify_difference_bound(&IntSet::new(pow).unwrap(), 3u64.pow(9), 3).unwrap();
        assert_eq!((rep.new_sums, rep.new_diffs), (9, 16));
        assert_eq!(rep.verdict, BoundVerdict::Holds);
    }

    #[test]
    fn difference_bound_preconditions() {
        let s = IntSet::interval(9);
        assert!(verify_difference_bound(&s, 9, 3).is_err());
        assert!(verify_difference_bound(&s, 100, 0).is_err());
        assert!(verify_difference_bound(&IntSet::interval(5), 100, 3).is_err());
        assert!(verify_difference_bound(&IntSet::new(vec![]).unwrap(), 100, 1).is_err());
    }

    #[test]
    fn finiteness_examples() {
        // {0..14} followed by 100·3^k
        let mut e: Vec<u64> = (0..=14).collect();
        e.extend((1..=5).map(|k| 100 * 3u64.pow(k)));
        let spec = explicit(e);
        let c = certify_finitely_many(&spec, 16, 20, DEFAULT_CERTIFY_BUDGET).unwrap();
        assert!(c.growth.holds);
        assert!(c.search_exhausted);
        assert_eq!(c.verdict, FinitenessVerdict::ConsistentWithinBudget);

        let s3 = base_expansion(&IntSet::conway(), 3).unwrap();
        let spec = explicit(s3.elements().to_vec());
        let c = certify_finitely_many(&spec, 4, 512, 10_000).unwrap();
        assert_eq!(c.verdict, FinitenessVerdict::Refuted);
        assert_eq!(c.special_witness, Some(s3));

        let c = certify_finitely_many(&SequenceSpec::Fibonacci, 4, 40, 1 << 16).unwrap();
        assert!(c.growth.holds);
        assert_eq!(c.verdict, FinitenessVerdict::ConsistentWithinBudget);
        assert!(!c.search_exhausted);
    }

    #[test]
    fn finiteness_growth_violation() {
        let c = certify_finitely_many(&explicit((0..=10).collect()), 4, 11, 1 << 12).unwrap();
        assert_eq!(c.verdict, FinitenessVerdict::GrowthViolated);
        assert!(certify_finitely_many(&SequenceSpec::Fibonacci, 3, 10, 10).is_err());
        assert!(certify_finitely_many(&SequenceSpec::Fibonacci, 12, 10, 10).is_err());
    }

    #[test]
    fn certificates_serialize() {
        let c = certify_no_mstd(&SequenceSpec::Fibonacci, 3, 20, 1000).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], "certified-no-mstd");
        assert_eq!(v["spec"]["kind"], "fibonacci");
        let spec: SequenceSpec =
            serde_json::from_str(r#"{"kind":"shifted_geometric","c":2,"r":3,"d":5}"#).unwrap();
        assert_eq!(spec, geo(2, 3, 5));
        let spec: SequenceSpec =
            serde_json::from_str(r#"{"kind":"linear_recurrence","coeffs":[1,1],"seeds":[1,2]}"#).unwrap();
        assert!(matches!(spec, SequenceSpec::LinearRecurrence { .. }));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Sequences with a_k > a_{k-1} + a_{k-r} from k = r+1 on.
        fn growing(r: usize, len: usize) -> impl Strategy<Value = Vec<u64>> {
            (proptest::collection::vec(1u64..20, r), proptest::collection::vec(1u64..5, len))
                .prop_map(move |(seed_steps, slack)| {
                    let mut a: Vec<u64> = Vec::new();
                    let mut x = 0;
                    for s in seed_steps {
                        x += s;
                        a.push(x);
                    }
                    for (i, s) in slack.into_iter().enumerate() {
                        let k = a.len();
                        if k >= len || i >= len {
                            break;
                        }
                        a.push(a[k - 1] + a[k - r] + s);
                    }
                    a
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn growth_sequences_have_no_mstd_subsets(r in 1usize..4, a in (1usize..4).prop_flat_map(|r| growing(r, 16))) {
                let spec = explicit(a.clone());
                prop_assume!(check_growth(&spec, r, a.len()).map(|g| g.holds).unwrap_or(false));
                let g = IntSet::new(a[..a.len().min(16)].to_vec()).unwrap();
                let rep = exhaustive_search(&SearchConfig::exhaustive(g)).unwrap();
                prop_assert_eq!(rep.hit_count, 0);
            }

            #[test]
            fn growth_is_monotone_in_window(a in growing(2, 30), extra in 0usize..4) {
                let spec = explicit(a.clone());
                let g = check_growth(&spec, 2, a.len()).unwrap();
                prop_assume!(g.holds);
                let r2 = 2 + extra;
                prop_assume!(a.len() > r2);
                prop_assert!(check_growth(&spec, r2, a.len()).unwrap().holds);
            }

            #[test]
            fn bound_holds_under_growth(a in growing(3, 24), cut in 8usize..20, picks in any::<u32>()) {
                // S' = any subset of a[..cut] keeping its last three terms, new = a[cut]
                prop_assume!(cut < a.len());
                let mut sp: Vec<u64> = (0..cut - 3).filter(|i| picks >> i & 1 == 1).map(|i| a[i]).collect();
                sp.extend_from_slice(&a[cut - 3..cut]);
                prop_assume!(sp.len() + 1 >= 8);
                let rep = verify_difference_bound(&IntSet::new(sp).unwrap(), a[cut], 3).unwrap();
                prop_assert!(rep.hypothesis_applicable);
                prop_assert_eq!(rep.verdict, BoundVerdict::Holds);
                prop_assert!(rep.fresh_extreme_diffs >= rep.k as u64 + 2);
            }

            #[test]
            fn refutation_witnesses_are_mstd(extra in proptest::collection::btree_set(15u64..40, 0..4)) {
                let mut e: Vec<u64> = (0..=14).collect();
                e.extend(extra);
                let n = e.len();
                let c = certify_no_mstd(&explicit(e), 3, n, 1 << 20).unwrap();
                prop_assert_eq!(c.verdict, NoMstdVerdict::Refuted);
                prop_assert!(classify(c.mstd_witness.as_ref().unwrap()).unwrap().is_mstd());
            }
        }
    }
}
