use std::sync::OnceLock;

use super::kernel::SubsetKernel;
use crate::sets::IntSet;

/// Smallest cardinality of any MSTD set. This is a known result that the
/// search engines only use as a pruning rule when asked to, and always report.
pub const MIN_MSTD_CARDINALITY: usize = 8;

/// Facts established by this crate's own exhaustive runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Baseline {
    /// No MSTD set has a smaller diameter.
    pub min_diameter: u64,
    /// The first MSTD set met, in enumeration order, at that diameter.
    pub witness: IntSet,
    pub examined: u64,
}

/// Finds the smallest diameter of an MSTD set by enumerating, for `D = 1, 2,
/// ...`, every subset of `{0..D}` containing both endpoints. Any finite set is a
/// translate of exactly one of these, so the first `D` with a hit is the
/// minimum.
pub fn baseline() -> &'static Baseline {
    static BASE: OnceLock<Baseline> = OnceLock::new();
    BASE.get_or_init(compute)
}

fn compute() -> Baseline {
    let mut examined = 0u64;
    for d in 1u64..=62 {
        let ground = IntSet::interval(d);
        let mut k = SubsetKernel::for_ground(&ground);
        let ends = 1u64 | (1u64 << d);
        for inner in 0u64..(1u64 << (d - 1)) {
            let mask = ends | (inner << 1);
            examined += 1;
            let (s, df) = k.counts_mask(mask);
            if s > df {
                return Baseline { min_diameter: d, witness: ground.subset_by_mask(mask), examined };
            }
        }
    }
    unreachable!("the Conway set has diameter 14")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_diameter_is_fourteen() {
        let b = baseline();
        assert_eq!(b.min_diameter, 14);
        assert_eq!(b.witness, IntSet::conway());
        // Σ_{d=1}^{14} 2^{d-1} subsets at most
        assert!(b.examined < 1 << 14);
    }
}
