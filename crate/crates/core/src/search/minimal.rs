//! Smallest MSTD subset of a ground set, by largest element or by diameter.
//!
//! Two passes. First, affine images `t + c·K` of the Conway set and its mirror
//! image are looked up directly; these are cheap and on sparse grounds (the
//! primes, say) they are usually the only hits reachable at all. Second,
//! subsets are enumerated group by group in increasing objective value until
//! the value reaches the best hit so far or the budget runs out. When that
//! pass stops for the first reason, the best hit is certified optimal.

use super::enumerate::{self, Plan, Visit};
use super::kernel::SubsetKernel;
use super::{baseline, pruning_labels, Objective, SearchReport, DEFAULT_HIT_CAP, MIN_MSTD_CARDINALITY};
use crate::error::{MstdError, Result};
use crate::sets::{classify, IntSet, CONWAY};

fn templates() -> [[u64; 8]; 2] {
    let mut mirror = CONWAY.map(|x| 14 - x);
    mirror.sort_unstable();
    [CONWAY, mirror]
}

fn value(set: &IntSet, objective: Objective) -> u64 {
    match objective {
        Objective::MinimizeDiameter => set.diameter(),
        _ => set.max().unwrap_or(0),
    }
}

/// Dilated Conway sets inside the ground.
fn template_pass(ground: &IntSet, budget: u64) -> (Vec<IntSet>, u64) {
    let g = ground.elements();
    let mut hits = Vec::new();
    let mut examined = 0u64;
    'outer: for (i, &lo) in g.iter().enumerate() {
        for &hi in &g[i + 1..] {
            let span = hi - lo;
            if span % 14 != 0 {
                continue;
            }
            if examined >= budget {
                break 'outer;
            }
            examined += 1;
            let c = span / 14;
            for t in templates() {
                if t.iter().all(|&x| ground.contains(lo + c * x)) {
                    let set = IntSet::new(t.iter().map(|&x| lo + c * x).collect())
                        .expect("dilation of a sorted set is sorted");
                    hits.push(set);
                }
            }
        }
    }
    (hits, examined)
}

/// One group of the second pass: subsets whose objective value is `value`,
/// described as `fixed | (inner << shift)` for `inner` ranging over subsets of
/// `width` bits with at least `min_inner` of them set.
struct Group {
    value: u64,
    fixed: u64,
    shift: u32,
    width: u32,
    min_inner: u32,
}

fn groups(ground: &IntSet, objective: Objective, min_diameter: u64) -> Vec<Group> {
    let g = ground.elements();
    let n = g.len();
    let min_inner_max = MIN_MSTD_CARDINALITY as u32 - 1;
    let min_inner_pair = MIN_MSTD_CARDINALITY as u32 - 2;
    match objective {
        Objective::MinimizeDiameter => {
            let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n.min(63) {
                    let d = g[j] - g[i];
                    if d >= min_diameter && (j - i - 1) as u32 >= min_inner_pair {
                        pairs.push((d, i, j));
                    }
                }
            }
            pairs.sort_unstable();
            pairs
                .into_iter()
                .map(|(d, i, j)| Group {
                    value: d,
                    fixed: (1u64 << i) | (1u64 << j),
                    shift: i as u32 + 1,
                    width: (j - i - 1) as u32,
                    min_inner: min_inner_pair,
                })
                .collect()
        }
        _ => (0..n.min(63))
            .filter(|&j| j as u32 >= min_inner_max && g[j] - g[0] >= min_diameter)
            .map(|j| Group {
                value: g[j],
                fixed: 1u64 << j,
                shift: 0,
                width: j as u32,
                min_inner: min_inner_max,
            })
            .collect(),
    }
}

/// Finds an MSTD subset of `ground` minimizing the largest element or the
/// diameter. `hits` lists every hit found, best first.
pub fn minimal_mstd_in(ground: &IntSet, objective: Objective, budget: u64) -> Result<SearchReport> {
    if !matches!(objective, Objective::MinimizeMaxElement | Objective::MinimizeDiameter) {
        return Err(MstdError::domain("objective must be minimize-max-element or minimize-diameter"));
    }
    let base = baseline();
    let (mut hits, mut examined) = template_pass(ground, budget);
    let mut best = hits.iter().map(|h| value(h, objective)).min();

    let kernel = SubsetKernel::for_ground(ground);
    let g = ground.elements();
    let mut truncated = ground.len() > 63;
    for group in groups(ground, objective, base.min_diameter) {
        if best.is_some_and(|b| group.value >= b) {
            break;
        }
        let remaining = budget.saturating_sub(examined);
        if remaining == 0 {
            truncated = true;
            break;
        }
        let plan = Plan {
            n: group.width,
            min_size: group.min_inner,
            max_size: group.width,
            budget: remaining,
            stop_at_first: false,
            hit_cap: DEFAULT_HIT_CAP,
        };
        let min_diameter = base.min_diameter;
        let run = enumerate::run(&plan, &kernel, |k, inner| {
            let mask = group.fixed | (inner << group.shift);
            let lo = g[mask.trailing_zeros() as usize];
            let hi = g[63 - mask.leading_zeros() as usize];
            if hi - lo < min_diameter {
                return Visit::Pruned;
            }
            let (s, d) = k.counts_mask(mask);
            if s > d {
                Visit::Hit
            } else {
                Visit::Miss
            }
        });
        examined += run.examined;
        for inner in &run.hits {
            let set = ground.subset_by_mask(group.fixed | (inner << group.shift));
            hits.push(set);
        }
        if run.hit_count > 0 {
            best = Some(group.value);
        }
        if !run.exhausted {
            truncated = true;
            break;
        }
    }

    for h in &hits {
        debug_assert!(classify(h).map(|c| c.is_mstd()).unwrap_or(false));
    }
    hits.sort_by(|a, b| (value(a, objective), a.elements()).cmp(&(value(b, objective), b.elements())));
    hits.dedup();
    hits.truncate(DEFAULT_HIT_CAP);
    let mut report = SearchReport::empty(!truncated);
    report.hit_count = hits.len() as u64;
    report.hits = hits;
    report.examined = examined;
    report.pruning = pruning_labels(base);
    report.best = best;
    report.optimal = best.map(|_| !truncated);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_is_optimal_in_0_14() {
        let r = minimal_mstd_in(&IntSet::interval(14), Objective::MinimizeMaxElement, 1 << 20).unwrap();
        assert_eq!(r.best, Some(14));
        assert_eq!(r.optimal, Some(true));
        assert_eq!(r.hits[0], IntSet::conway());
        assert!(r.exhausted);

        let r = minimal_mstd_in(&IntSet::interval(20), Objective::MinimizeDiameter, 1 << 24).unwrap();
        assert_eq!(r.best, Some(14));
        assert_eq!(r.optimal, Some(true));
    }

    #[test]
    fn enumeration_certifies_template_hit() {
        // a translate of the mirror image plus noise below it
        let mut e: Vec<u64> = vec![1, 5, 6];
        e.extend([0u64, 2, 3, 7, 10, 11, 12, 14].iter().map(|x| x + 20));
        e.sort_unstable();
        e.dedup();
        let g = IntSet::new(e).unwrap();
        let r = minimal_mstd_in(&g, Objective::MinimizeMaxElement, 1 << 20).unwrap();
        assert_eq!(r.optimal, Some(true));
        assert!(r.hits.iter().all(|h| classify(h).unwrap().is_mstd()));
    }

    #[test]
    fn budget_exhaustion_before_any_hit() {
        let g = IntSet::new((0..40).map(|i| 1u64 << i).collect()).unwrap();
        let r = minimal_mstd_in(&g, Objective::MinimizeMaxElement, 100).unwrap();
        assert!(r.hits.is_empty());
        assert!(!r.exhausted);
        assert_eq!(r.optimal, None);
        assert_eq!(r.examined, 100);
    }

    #[test]
    fn primes_to_439_contain_the_dilated_set() {
        let ps = crate::primes::sieve(439).unwrap();
        let g = IntSet::new(ps.primes().collect()).unwrap();
        let r = minimal_mstd_in(&g, Objective::MinimizeMaxElement, 1 << 22).unwrap();
        let t = IntSet::new(vec![19, 79, 109, 139, 229, 349, 379, 439]).unwrap();
        assert!(r.hits.contains(&t));
        assert!(r.best.unwrap() <= 439);
        assert!(r.hits.iter().all(|h| classify(h).unwrap().is_mstd()));
    }

    #[test]
    fn fibonacci_prefix_has_no_hit() {
        let fib = crate::sequences::materialize(&crate::sequences::SequenceSpec::Fibonacci, 18).unwrap();
        let r = minimal_mstd_in(&IntSet::new(fib).unwrap(), Objective::MinimizeMaxElement, 1 << 20).unwrap();
        assert!(r.hits.is_empty());
        assert!(r.exhausted);
        assert_eq!(r.optimal, None);
    }

    #[test]
    fn rejects_non_minimizing_objectives() {
        assert!(minimal_mstd_in(&IntSet::interval(5), Objective::CountAll, 10).is_err());
    }
}
