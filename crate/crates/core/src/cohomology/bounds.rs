//! Sweep of `h1`, `h2` over central extensions.
//!
//! For `1 -> Z/p -> G' -> G -> 1`:
//! `h1(G') <= h1(G) + 1`, `h2(G') <= h1(G) + h2(G) + 1`, and
//! `h2(G') <= h1(G) + h2(G)` when the extension does not split.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bruteforce::combination;
use super::{extension_basis_with_cap, h2_fast, ExtensionClass};
use crate::error::Result;
use crate::pgroup::PcGroup;

/// Which classes a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepPolicy {
    /// Every class when `p^h2 <= limit`; otherwise the basis plus `samples`
    /// seeded random combinations.
    Exhaustive { limit: usize, samples: usize, seed: u64 },
}

impl Default for SweepPolicy {
    fn default() -> Self {
        SweepPolicy::Exhaustive {
            limit: 1 << 16,
            samples: 256,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub class_index: usize,
    pub split: bool,
    pub h1: usize,
    pub h2: usize,
    pub bound_ok: bool,
    /// Slack in the applicable `h2` bound.
    pub margin: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HBoundsReport {
    pub order: u64,
    pub h1: usize,
    pub h2: usize,
    pub classes_checked: usize,
    pub exhaustive: bool,
    pub violations: usize,
    pub entries: Vec<BoundEntry>,
}

impl HBoundsReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn check_class(index: usize, ext: &ExtensionClass, h1: usize, h2: usize) -> BoundEntry {
    let t = ext.total_group();
    let split = ext.is_split();
    let h1t = t.h1();
    let h2t = h2_fast(&t);
    let h2_bound = h1 + h2 + usize::from(split);
    BoundEntry {
        class_index: index,
        split,
        h1: h1t,
        h2: h2t,
        bound_ok: h1t <= h1 + 1 && h2t <= h2_bound,
        margin: h2_bound as i64 - h2t as i64,
    }
}

pub fn verify_h_bounds(g: &PcGroup) -> Result<HBoundsReport> {
    verify_h_bounds_with(g, super::default_cap(g.prime()), SweepPolicy::default())
}

pub fn verify_h_bounds_with(g: &PcGroup, cap: usize, policy: SweepPolicy) -> Result<HBoundsReport> {
    let basis = extension_basis_with_cap(g, cap)?;
    let h1 = g.h1();
    let h2 = basis.len() - 1;
    let p = g.prime() as usize;
    let SweepPolicy::Exhaustive { limit, samples, seed } = policy;
    let total = p.checked_pow(h2 as u32).filter(|&t| t <= limit);

    let indices: Vec<usize> = match total {
        Some(t) => (0..t).collect(),
        None => {
            let mut idx: Vec<usize> = (0..=h2).map(|i| if i == 0 { 0 } else { p.pow(i as u32 - 1) }).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let span = p.saturating_pow(h2.min(40) as u32);
            idx.extend((0..samples).map(|_| rng.gen_range(0..span)));
            idx.sort_unstable();
            idx.dedup();
            idx
        }
    };
    let entries: Vec<BoundEntry> = indices
        .par_iter()
        .map(|&i| check_class(i, &combination(&basis[0], &basis[1..], i), h1, h2))
        .collect();
    let violations = entries.iter().filter(|e| !e.bound_ok).count();
    Ok(HBoundsReport {
        order: g.order(),
        h1,
        h2,
        classes_checked: entries.len(),
        exhaustive: total.is_some(),
        violations,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn cyclic_two() {
        let rep = verify_h_bounds(&catalog("c2", 2).unwrap()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.entries.len(), 2);
        let nonsplit = &rep.entries[1];
        assert!(!nonsplit.split);
        assert_eq!((nonsplit.h1, nonsplit.h2), (1, 1));
        // nonsplit bound h1 + h2 = 2 against h2(C4) = 1
        assert_eq!(nonsplit.margin, 1);
    }

    #[test]
    fn trivial_group() {
        let rep = verify_h_bounds(&PcGroup::trivial(3).unwrap()).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert_eq!((rep.entries[0].h1, rep.entries[0].h2), (1, 1));
        assert!(rep.passed());
    }

    #[test]
    fn klein_four_all_classes() {
        let rep = verify_h_bounds(&catalog("v4", 2).unwrap()).unwrap();
        assert!(rep.exhaustive);
        assert_eq!(rep.entries.len(), 8);
        assert!(rep.passed());
    }
}
