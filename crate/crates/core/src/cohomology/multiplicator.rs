//! `h2` through the p-multiplicator.
//!
//! Add a central tail `t_r` of order p to every defining relation and collect
//! the consistency words; each word yields a linear relation among the tails.
//! The tails then span `R / [R, F] R^p` for the free group `F` on the
//! pc-generators, of dimension `n - h1 + h2` (inflation–restriction for
//! `1 -> R -> F -> G -> 1`, using `H^2(F) = 0`).

use crate::linalg::{FpVec, RowSpace};
use crate::pgroup::{consistency_words, PcGroup, TailSink};

#[derive(Clone, Debug)]
struct Tails {
    p: u32,
    n: usize,
    counts: Vec<u32>,
}

impl Tails {
    fn bump(&mut self, r: usize) {
        self.counts[r] = (self.counts[r] + 1) % self.p;
    }
}

impl TailSink for Tails {
    fn power(&mut self, i: usize) {
        self.bump(i);
    }

    fn conj(&mut self, m: usize, k: usize) {
        self.bump(self.n + m * (m - 1) / 2 + k);
    }

    fn absorb(&mut self, other: &Self) {
        for (a, &b) in self.counts.iter_mut().zip(&other.counts) {
            *a = (*a + b) % self.p;
        }
    }
}

/// Dimension of `R / [R, F] R^p`: tails modulo the consistency relations.
pub fn p_multiplicator_rank(g: &PcGroup) -> usize {
    let p = g.prime();
    let n = g.rank();
    let relations = n + n * n.saturating_sub(1) / 2;
    let fresh = || Tails {
        p,
        n,
        counts: vec![0; relations],
    };
    let mut space = RowSpace::new(p, relations);
    for (word, left, right) in consistency_words(g, fresh) {
        debug_assert_eq!(left.exps, right.exps, "inconsistent at {word}");
        let diff: Vec<u32> = left
            .sink
            .counts
            .iter()
            .zip(&right.sink.counts)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        space.insert(FpVec::from_slice(p, &diff));
    }
    relations - space.dim()
}

/// `h2(G) = dim H^2(G, Z/p)` for a consistent presentation.
pub fn h2_fast(g: &PcGroup) -> usize {
    p_multiplicator_rank(g) + g.h1() - g.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn anchors() {
        assert_eq!(h2_fast(&PcGroup::trivial(5).unwrap()), 0);
        for p in [2, 3, 5, 7] {
            assert_eq!(h2_fast(&catalog(&format!("c{p}"), p).unwrap()), 1);
        }
        assert_eq!(h2_fast(&catalog("c3xc3", 3).unwrap()), 3);
        assert_eq!(h2_fast(&catalog("c4", 2).unwrap()), 1);
        assert_eq!(h2_fast(&catalog("q8", 2).unwrap()), 2);
    }

    #[test]
    fn elementary_abelian_formula() {
        // h2((Z/p)^d) = d + d(d-1)/2
        for d in 1..=5 {
            let name = vec!["c3"; d].join("x");
            assert_eq!(h2_fast(&catalog(&name, 3).unwrap()), d + d * (d - 1) / 2);
        }
    }
}
