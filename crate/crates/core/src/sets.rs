//! Exact finite-set arithmetic: sumsets, difference sets, MSTD classification,
//! element-append accounting and carry-free base expansion.
//!
//! Sets are kept as sorted vectors externally. `A + A` and `A - A` are computed
//! over a dense bit vector spanning `[min, max]`, so the cost is governed by the
//! diameter rather than the cardinality. The diameter cap bounds the memory
//! that kernel may allocate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{MstdError, Result};

/// Default bound on the bit-vector extent used by the dense kernels.
pub const DEFAULT_DIAMETER_CAP: u64 = 1 << 24;

/// Elements are kept below this so pairwise sums and signed differences
/// never overflow.
pub const MAX_ELEMENT: u64 = 1 << 62;

/// The Conway set, the smallest MSTD set.
pub const CONWAY: [u64; 8] = [0, 2, 3, 4, 7, 11, 12, 14];

/// A finite set of nonnegative integers, stored strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIntSet", into = "RawIntSet")]
pub struct IntSet {
    elements: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawIntSet {
    elements: Vec<u64>,
}

impl TryFrom<RawIntSet> for IntSet {
    type Error = MstdError;
    fn try_from(raw: RawIntSet) -> Result<Self> {
        IntSet::new(raw.elements)
    }
}

impl From<IntSet> for RawIntSet {
    fn from(s: IntSet) -> Self {
        RawIntSet { elements: s.elements }
    }
}

impl IntSet {
    /// Builds a set from a strictly increasing list.
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if let Some(i) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(MstdError::domain(format!(
                "elements must be strictly increasing: {} then {} at position {}",
                elements[i],
                elements[i + 1],
                i + 1
            )));
        }
        if let Some(&m) = elements.last() {
            if m >= MAX_ELEMENT {
                return Err(MstdError::domain(format!(
                    "element {m} exceeds the supported maximum 2^62"
                )));
            }
        }
        Ok(IntSet { elements })
    }

    /// Builds a set from arbitrary values, sorting and deduplicating.
    pub fn from_unsorted(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    pub fn conway() -> Self {
        IntSet { elements: CONWAY.to_vec() }
    }

    /// `{0, 1, ..., n}`.
    pub fn interval(n: u64) -> Self {
        IntSet { elements: (0..=n).collect() }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<u64> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn diameter(&self) -> u64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn element_sum(&self) -> u128 {
        self.elements.iter().map(|&x| x as u128).sum()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `c·S + t`.
    pub fn affine(&self, scale: u64, shift: u64) -> Result<Self> {
        if scale == 0 {
            return Err(MstdError::domain("affine scale must be positive"));
        }
        let elements = self
            .elements
            .iter()
            .map(|&x| {
                x.checked_mul(scale)
                    .and_then(|y| y.checked_add(shift))
                    .ok_or_else(|| MstdError::domain("affine image overflows"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements)
    }

    /// `S ∪ {x}`.
    pub fn with_element(&self, x: u64) -> Result<Self> {
        match self.elements.binary_search(&x) {
            Ok(_) => Err(MstdError::domain(format!("{x} is already a member"))),
            Err(at) => {
                let mut e = self.elements.clone();
                e.insert(at, x);
                Self::new(e)
            }
        }
    }

    /// Elements selected by the set bits of `mask` (bit i = i-th element).
    pub fn subset_by_mask(&self, mask: u64) -> IntSet {
        IntSet {
            elements: bits::ones(&[mask]).map(|i| self.elements[i]).collect(),
        }
    }

    pub fn subset_by_indices(&self, idx: &[usize]) -> IntSet {
        IntSet {
            elements: idx.iter().map(|&i| self.elements[i]).collect(),
        }
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.elements {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for IntSet {
    type Err = MstdError;

    /// Parses strictly increasing comma-separated decimal integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return IntSet::new(Vec::new());
        }
        let elements = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u64>()
                    .map_err(|_| MstdError::Parse(format!("not a nonnegative integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(elements)
    }
}

/// A difference set `A - A`. Symmetric about zero, so only the signed list is
/// exposed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSet {
    elements: Vec<i64>,
}

impl DiffSet {
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

impl fmt::Display for DiffSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "mstd")]
    Mstd,
    #[serde(rename = "balanced")]
    Balanced,
    #[serde(rename = "diff_dominated")]
    DiffDominated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Mstd => "mstd",
            Verdict::Balanced => "balanced",
            Verdict::DiffDominated => "diff_dominated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub sum_count: u64,
    pub diff_count: u64,
    pub verdict: Verdict,
    pub gap: i64,
    pub special: bool,
}

impl Classification {
    pub fn from_counts(sum_count: u64, diff_count: u64, cardinality: usize) -> Self {
        let gap = sum_count as i64 - diff_count as i64;
        let verdict = match gap {
            g if g > 0 => Verdict::Mstd,
            0 => Verdict::Balanced,
            _ => Verdict::DiffDominated,
        };
        Classification {
            sum_count,
            diff_count,
            verdict,
            gap,
            special: gap >= cardinality as i64 && cardinality > 0,
        }
    }

    pub fn is_mstd(&self) -> bool {
        self.verdict == Verdict::Mstd
    }
}

/// Effect of adding one element to a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendAnalysis {
    pub new_sums: u64,
    pub new_diffs: u64,
    /// `x >= 2·Σ s`: the regime where every new sum and difference is forced
    /// to be fresh.
    pub threshold_met: bool,
}

/// Set arithmetic bounded by a diameter cap on the dense kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arith {
    pub diameter_cap: u64,
}

impl Default for Arith {
    fn default() -> Self {
        Arith { diameter_cap: DEFAULT_DIAMETER_CAP }
    }
}

fn require_nonempty(s: &IntSet) -> Result<()> {
    if s.is_empty() {
        Err(MstdError::domain("set must be nonempty"))
    } else {
        Ok(())
    }
}

impl Arith {
    pub fn with_diameter_cap(diameter_cap: u64) -> Self {
        Arith { diameter_cap }
    }

    fn check_extent(&self, extent: u64) -> Result<()> {
        if extent > self.diameter_cap {
            Err(MstdError::Capacity { extent, cap: self.diameter_cap })
        } else {
            Ok(())
        }
    }

    /// Positions relative to `min` as a bit vector with room for `2·D + 1` bits.
    fn positions(s: &IntSet) -> (Vec<u64>, usize) {
        let lo = s.elements[0];
        let d = s.diameter() as usize;
        let words = (2 * d) / 64 + 1;
        let mut pos = vec![0u64; words];
        for &x in &s.elements {
            bits::set_bit(&mut pos, (x - lo) as usize);
        }
        (pos, d)
    }

    /// Bits of `(S - min) + (S - min)` over `[0, 2D]`.
    fn sum_bits(pos: &[u64], s: &IntSet) -> Vec<u64> {
        let lo = s.elements[0];
        let mut out = vec![0u64; pos.len()];
        for &x in &s.elements {
            bits::shl_or(&mut out, pos, (x - lo) as usize);
        }
        out
    }

    /// Bits of `{a - b >= 0}` over `[0, D]`.
    fn nonneg_diff_bits(pos: &[u64], s: &IntSet, d: usize) -> Vec<u64> {
        let lo = s.elements[0];
        let mut out = vec![0u64; d / 64 + 1];
        for &x in &s.elements {
            bits::shr_or(&mut out, pos, (x - lo) as usize);
        }
        out
    }

    pub fn sumset(&self, s: &IntSet) -> Result<IntSet> {
        require_nonempty(s)?;
        self.check_extent(2 * s.diameter())?;
        let (pos, _) = Self::positions(s);
        let sums = Self::sum_bits(&pos, s);
        let base = 2 * s.elements[0];
        Ok(IntSet {
            elements: bits::ones(&sums).map(|b| base + b as u64).collect(),
        })
    }

    pub fn diffset(&self, s: &IntSet) -> Result<DiffSet> {
        require_nonempty(s)?;
        self.check_extent(2 * s.diameter())?;
        let (pos, d) = Self::positions(s);
        let nonneg: Vec<i64> = bits::ones(&Self::nonneg_diff_bits(&pos, s, d))
            .map(|b| b as i64)
            .collect();
        let mut elements: Vec<i64> = nonneg.iter().rev().filter(|&&x| x != 0).map(|&x| -x).collect();
        elements.extend_from_slice(&nonneg);
        Ok(DiffSet { elements })
    }

    /// `(|S + S|, |S - S|)`. Uses the dense kernel within the cap and falls
    /// back to sorting the `O(|S|²)` pairwise values beyond it.
    pub fn counts(&self, s: &IntSet) -> Result<(u64, u64)> {
        require_nonempty(s)?;
        if 2 * s.diameter() <= self.diameter_cap {
            let (pos, d) = Self::positions(s);
            let sums = bits::popcount(&Self::sum_bits(&pos, s));
            let nonneg = bits::popcount(&Self::nonneg_diff_bits(&pos, s, d));
            Ok((sums, 2 * nonneg - 1))
        } else {
            Ok(sparse_counts(s.elements()))
        }
    }

    pub fn classify(&self, s: &IntSet) -> Result<Classification> {
        let (sums, diffs) = self.counts(s)?;
        Ok(Classification::from_counts(sums, diffs, s.len()))
    }

    pub fn append_analysis(&self, s: &IntSet, x: u64) -> Result<AppendAnalysis> {
        require_nonempty(s)?;
        let extended = s.with_element(x)?;
        let (s0, d0) = self.counts(s)?;
        let (s1, d1) = self.counts(&extended)?;
        Ok(AppendAnalysis {
            new_sums: s1 - s0,
            new_diffs: d1 - d0,
            threshold_met: (x as u128) >= 2 * s.element_sum(),
        })
    }

    /// `S_k = {Σ_{i<k} c_i·b^i : c_i ∈ S}` with `b = 2·max(S) + 1`, the smallest
    /// base for which no pairwise sum carries between digits.
    pub fn base_expansion(&self, s: &IntSet, k: u32) -> Result<IntSet> {
        require_nonempty(s)?;
        if k == 0 {
            return Err(MstdError::domain("expansion depth k must be at least 1"));
        }
        if s.elements[0] != 0 {
            return Err(MstdError::domain("base expansion needs 0 in the set"));
        }
        let max = s.max().unwrap_or(0);
        let base = 2 * max + 1;
        // diameter of S_k = max · (b^{k-1} + ... + 1)
        let mut diameter: u64 = 0;
        let mut place: u64 = 1;
        for i in 0..k {
            if i > 0 {
                place = place
                    .checked_mul(base)
                    .ok_or(MstdError::Capacity { extent: u64::MAX, cap: self.diameter_cap })?;
            }
            diameter = max
                .checked_mul(place)
                .and_then(|t| diameter.checked_add(t))
                .ok_or(MstdError::Capacity { extent: u64::MAX, cap: self.diameter_cap })?;
        }
        self.check_extent(diameter)?;
        let mut cur = s.elements.clone();
        for _ in 1..k {
            let mut next = Vec::with_capacity(cur.len() * s.len());
            for &e in &cur {
                for &c in &s.elements {
                    next.push(c + base * e);
                }
            }
            cur = next;
        }
        IntSet::new(cur)
    }
}

/// Counts via sorting all pairwise sums and positive differences.
pub(crate) fn sparse_counts(e: &[u64]) -> (u64, u64) {
    let n = e.len();
    let mut sums = Vec::with_capacity(n * (n + 1) / 2);
    let mut diffs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i..n {
            sums.push(e[i] + e[j]);
            if j > i {
                diffs.push(e[j] - e[i]);
            }
        }
    }
    sums.sort_unstable();
    sums.dedup();
    diffs.sort_unstable();
    diffs.dedup();
    (sums.len() as u64, 2 * diffs.len() as u64 + 1)
}

pub fn sumset(s: &IntSet) -> Result<IntSet> {
    Arith::default().sumset(s)
}

pub fn diffset(s: &IntSet) -> Result<DiffSet> {
    Arith::default().diffset(s)
}

pub fn classify(s: &IntSet) -> Result<Classification> {
    Arith::default().classify(s)
}

pub fn append_analysis(s: &IntSet, x: u64) -> Result<AppendAnalysis> {
    Arith::default().append_analysis(s, x)
}

pub fn base_expansion(s: &IntSet, k: u32) -> Result<IntSet> {
    Arith::default().base_expansion(s, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(v: &[u64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    fn naive_sums(s: &[u64]) -> BTreeSet<u64> {
        s.iter().flat_map(|&a| s.iter().map(move |&b| a + b)).collect()
    }

    fn naive_diffs(s: &[u64]) -> BTreeSet<i64> {
        s.iter()
            .flat_map(|&a| s.iter().map(move |&b| a as i64 - b as i64))
            .collect()
    }

    #[test]
    fn conway_counts() {
        let c = IntSet::conway();
        assert_eq!(sumset(&c).unwrap().len(), 26);
        assert_eq!(diffset(&c).unwrap().len(), 25);
        let cl = classify(&c).unwrap();
        assert_eq!(cl.verdict, Verdict::Mstd);
        assert_eq!(cl.gap, 1);
        assert!(!cl.special);
    }

    #[test]
    fn small_examples() {
        assert_eq!(sumset(&set(&[0])).unwrap(), set(&[0]));
        assert_eq!(diffset(&set(&[0])).unwrap().elements(), &[0]);
        assert_eq!(sumset(&set(&[0, 1, 3])).unwrap(), set(&[0, 1, 2, 3, 4, 6]));
        assert_eq!(
            diffset(&set(&[0, 1, 3])).unwrap().elements(),
            &[-3, -2, -1, 0, 1, 2, 3]
        );
        assert_eq!(classify(&set(&[0, 1, 3])).unwrap().verdict, Verdict::DiffDominated);
        for n in 0..20 {
            assert_eq!(classify(&IntSet::interval(n)).unwrap().verdict, Verdict::Balanced);
        }
    }

    #[test]
    fn offset_sets_use_absolute_values() {
        let s = set(&[100, 101, 103]);
        assert_eq!(sumset(&s).unwrap(), set(&[200, 201, 202, 203, 204, 206]));
        assert_eq!(diffset(&s).unwrap().elements(), &[-3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn empty_and_malformed_inputs() {
        let e = IntSet::new(vec![]).unwrap();
        assert!(matches!(sumset(&e), Err(MstdError::Domain(_))));
        assert!(matches!(diffset(&e), Err(MstdError::Domain(_))));
        assert!(matches!(classify(&e), Err(MstdError::Domain(_))));
        assert!(IntSet::new(vec![1, 1]).is_err());
        assert!(IntSet::new(vec![3, 2]).is_err());
        assert!("1,x".parse::<IntSet>().is_err());
        assert!("5,4".parse::<IntSet>().is_err());
        assert_eq!("0, 2,3".parse::<IntSet>().unwrap(), set(&[0, 2, 3]));
    }

    #[test]
    fn capacity_is_enforced_for_dense_outputs() {
        let s = set(&[0, 1 << 30]);
        assert!(matches!(sumset(&s), Err(MstdError::Capacity { .. })));
        assert!(matches!(diffset(&s), Err(MstdError::Capacity { .. })));
        // counts-only classification falls back to the sparse kernel
        let cl = classify(&s).unwrap();
        assert_eq!((cl.sum_count, cl.diff_count), (3, 3));
        let tight = Arith::with_diameter_cap(27);
        assert!(tight.sumset(&IntSet::conway()).is_err());
        assert!(Arith::with_diameter_cap(28).sumset(&IntSet::conway()).is_ok());
    }

    #[test]
    fn append_examples() {
        let c = IntSet::conway();
        assert_eq!(c.element_sum(), 53);
        let a = append_analysis(&c, 200).unwrap();
        assert_eq!(a, AppendAnalysis { new_sums: 9, new_diffs: 16, threshold_met: true });
        assert_ne!(classify(&c.with_element(200).unwrap()).unwrap().verdict, Verdict::Mstd);

        let a = append_analysis(&set(&[0]), 5).unwrap();
        assert_eq!(a, AppendAnalysis { new_sums: 2, new_diffs: 2, threshold_met: true });

        assert!(append_analysis(&c, 7).is_err());
        assert!(!append_analysis(&c, 105).unwrap().threshold_met);
    }

    #[test]
    fn base_expansion_examples() {
        let c = IntSet::conway();
        assert_eq!(base_expansion(&c, 1).unwrap(), c);
        let s2 = base_expansion(&set(&[0, 1]), 2).unwrap();
        assert_eq!(s2, set(&[0, 1, 3, 4]));
        let cl = classify(&s2).unwrap();
        assert_eq!((cl.sum_count, cl.diff_count), (9, 9));

        let s3 = base_expansion(&c, 3).unwrap();
        assert_eq!(s3.len(), 512);
        let cl = classify(&s3).unwrap();
        assert_eq!((cl.sum_count, cl.diff_count), (17576, 15625));
        assert!(cl.special);
        assert_eq!(cl.gap, 1951);

        assert!(base_expansion(&c, 0).is_err());
        assert!(base_expansion(&set(&[1, 2]), 2).is_err());
        assert!(matches!(
            Arith::with_diameter_cap(1000).base_expansion(&c, 3),
            Err(MstdError::Capacity { .. })
        ));
        assert!(matches!(base_expansion(&c, 40), Err(MstdError::Capacity { .. })));
    }

    #[test]
    fn exhaustive_agreement_with_pair_oracle() {
        // every nonempty subset of {0..16}
        for mask in 1u64..(1 << 17) {
            let s = IntSet::interval(16).subset_by_mask(mask);
            let cl = classify(&s).unwrap();
            let ns = naive_sums(s.elements()).len() as u64;
            let nd = naive_diffs(s.elements()).len() as u64;
            assert_eq!((cl.sum_count, cl.diff_count), (ns, nd), "{s:?}");
        }
    }

    #[test]
    fn json_shapes() {
        let c = IntSet::conway();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"elements":[0,2,3,4,7,11,12,14]}"#);
        let cl = classify(&c).unwrap();
        assert_eq!(
            serde_json::to_string(&cl).unwrap(),
            r#"{"sum_count":26,"diff_count":25,"verdict":"mstd","gap":1,"special":false}"#
        );
        assert!(serde_json::from_str::<IntSet>(r#"{"elements":[3,1]}"#).is_err());
        assert_eq!(c.to_string(), "0,2,3,4,7,11,12,14");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_set() -> impl Strategy<Value = IntSet> {
            proptest::collection::btree_set(0u64..300, 1..40)
                .prop_map(|b| IntSet::new(b.into_iter().collect()).unwrap())
        }

        fn is_ap(e: &[u64]) -> bool {
            e.len() < 3 || e.windows(2).all(|w| w[1] - w[0] == e[1] - e[0])
        }

        proptest! {
            #[test]
            fn dense_matches_naive(s in arb_set()) {
                let sums: Vec<u64> = naive_sums(s.elements()).into_iter().collect();
                let diffs: Vec<i64> = naive_diffs(s.elements()).into_iter().collect();
                let ss = sumset(&s).unwrap();
                let dd = diffset(&s).unwrap();
                prop_assert_eq!(ss.elements(), &sums[..]);
                prop_assert_eq!(dd.elements(), &diffs[..]);
                prop_assert_eq!(sparse_counts(s.elements()), (sums.len() as u64, diffs.len() as u64));
            }

            #[test]
            fn diffset_symmetry_and_lower_bound(s in arb_set()) {
                let d = diffset(&s).unwrap();
                prop_assert!(d.contains(0));
                prop_assert_eq!(d.len() % 2, 1);
                for &x in d.elements() {
                    prop_assert!(d.contains(-x));
                }
                prop_assert!(d.len() >= 2 * s.len() - 1);
                prop_assert_eq!(d.len() == 2 * s.len() - 1, is_ap(s.elements()));
                let n = s.len();
                let ss = sumset(&s).unwrap().len();
                prop_assert!(ss >= 2 * n - 1 && ss <= n * (n + 1) / 2);
            }

            #[test]
            fn affine_invariance(s in arb_set(), c in 1u64..50, t in 0u64..1000) {
                let a = classify(&s).unwrap();
                let b = classify(&s.affine(c, t).unwrap()).unwrap();
                prop_assert_eq!(a, b);
            }

            #[test]
            fn append_past_threshold(s in arb_set(), extra in 0u64..1000) {
                let x = 2 * s.element_sum() as u64 + extra;
                prop_assume!(!s.contains(x));
                let a = append_analysis(&s, x).unwrap();
                prop_assert!(a.threshold_met);
                prop_assert_eq!(a.new_sums, s.len() as u64 + 1);
                prop_assert_eq!(a.new_diffs, 2 * s.len() as u64);
                let before = classify(&s).unwrap().gap;
                let after = classify(&s.with_element(x).unwrap()).unwrap().gap;
                prop_assert_eq!(after, before - s.len() as i64 + 1);
            }

            #[test]
            fn append_bounds(s in arb_set(), x in 0u64..400) {
                prop_assume!(!s.contains(x));
                let a = append_analysis(&s, x).unwrap();
                prop_assert!(a.new_sums <= s.len() as u64 + 1);
                prop_assert!(a.new_diffs <= 2 * s.len() as u64);
            }

            #[test]
            fn base_expansion_is_multiplicative(
                tail in proptest::collection::btree_set(1u64..12, 0..5),
                k in 1u32..4,
            ) {
                let mut e = vec![0];
                e.extend(tail);
                let s = IntSet::new(e).unwrap();
                let (s0, d0) = Arith::default().counts(&s).unwrap();
                let sk = base_expansion(&s, k).unwrap();
                let (sk_s, sk_d) = Arith::default().counts(&sk).unwrap();
                prop_assert_eq!(sk.len(), s.len().pow(k));
                prop_assert_eq!(sk_s, s0.pow(k));
                prop_assert_eq!(sk_d, d0.pow(k));
            }
        }
    }
}
