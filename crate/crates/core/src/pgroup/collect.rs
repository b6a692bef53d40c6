//! Consistency of pc-presentations.
//!
//! A presentation with all relative orders `p` is consistent exactly when the
//! following overlap words collect to the same normal form both ways:
//!
//! * `(g_k g_j) g_i = g_k (g_j g_i)` for `k > j > i`
//! * `(g_j^p) g_i = g_j^{p-1} (g_j g_i)` for `j > i`
//! * `(g_j g_i) g_i^{p-1} = g_j (g_i^p)` for `j > i`
//! * `(g_i^p) g_i = g_i (g_i^p)`
//!
//! The same words, collected with a [`TailSink`] that records every relation
//! used, give the linear conditions on tails in the p-multiplicator
//! computation.

use serde::Serialize;

use super::PcGroup;

/// Observer for relation applications during collection. Tails are central
/// of order p, so only the number of uses of each relation matters.
pub(crate) trait TailSink {
    fn power(&mut self, _i: usize) {}
    fn conj(&mut self, _m: usize, _k: usize) {}
    fn absorb(&mut self, _other: &Self) {}
}

impl TailSink for () {}

#[derive(Clone, Debug)]
pub(crate) struct Collected<S> {
    pub exps: Vec<u32>,
    pub sink: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConsistencyWord {
    /// `g_k g_j g_i`, `k > j > i` (0-based).
    Triple { k: usize, j: usize, i: usize },
    /// `g_j^p g_i`, `j > i`.
    PowerLeft { j: usize, i: usize },
    /// `g_j g_i^p`, `j > i`.
    PowerRight { j: usize, i: usize },
    /// `g_i^{p+1}`.
    PowerSelf { i: usize },
}

impl std::fmt::Display for ConsistencyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ConsistencyWord::Triple { k, j, i } => write!(f, "g{} g{} g{}", k + 1, j + 1, i + 1),
            ConsistencyWord::PowerLeft { j, i } => write!(f, "g{}^p g{}", j + 1, i + 1),
            ConsistencyWord::PowerRight { j, i } => write!(f, "g{} g{}^p", j + 1, i + 1),
            ConsistencyWord::PowerSelf { i } => write!(f, "g{}^(p+1)", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyFailure {
    pub word: ConsistencyWord,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub tests_run: usize,
    pub failures: Vec<ConsistencyFailure>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn unit(n: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

impl PcGroup {
    /// `x · g_k`, starting from a collected element.
    fn times_gen<S: TailSink>(&self, mut x: Collected<S>, k: usize) -> Collected<S> {
        self.collect_gen(&mut x.exps, k, &mut x.sink);
        x
    }

    /// `x · y` where `y` is a collected element carrying its own tails.
    fn times<S: TailSink>(&self, mut x: Collected<S>, y: &Collected<S>) -> Collected<S> {
        self.collect_word(&mut x.exps, &y.exps, &mut x.sink);
        x.sink.absorb(&y.sink);
        x
    }

    /// Normal form of `g_i^p`, with the power tail recorded.
    fn pth_power<S: TailSink>(&self, i: usize, mut sink: S) -> Collected<S> {
        sink.power(i);
        Collected {
            exps: self.power[i].clone(),
            sink,
        }
    }
}

/// Collects every consistency word both ways.
pub(crate) fn consistency_words<S, F>(g: &PcGroup, fresh: F) -> Vec<(ConsistencyWord, Collected<S>, Collected<S>)>
where
    S: TailSink,
    F: Fn() -> S,
{
    let n = g.n;
    let p = g.p;
    let elem = |exps: Vec<u32>| Collected { exps, sink: fresh() };
    let mut out = Vec::new();

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let left = g.times_gen(g.times_gen(elem(unit(n, k, 1)), j), i);
                let ji = g.times_gen(elem(unit(n, j, 1)), i);
                let right = g.times(elem(unit(n, k, 1)), &ji);
                out.push((ConsistencyWord::Triple { k, j, i }, left, right));
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            let left = g.times_gen(g.pth_power(j, fresh()), i);
            let ji = g.times_gen(elem(unit(n, j, 1)), i);
            let right = g.times(elem(unit(n, j, p - 1)), &ji);
            out.push((ConsistencyWord::PowerLeft { j, i }, left, right));

            let mut left = elem(unit(n, j, 1));
            for _ in 0..p {
                left = g.times_gen(left, i);
            }
            let right = g.times(elem(unit(n, j, 1)), &g.pth_power(i, fresh()));
            out.push((ConsistencyWord::PowerRight { j, i }, left, right));
        }
    }
    for i in 0..n {
        let left = g.times_gen(g.pth_power(i, fresh()), i);
        let right = g.times(elem(unit(n, i, 1)), &g.pth_power(i, fresh()));
        out.push((ConsistencyWord::PowerSelf { i }, left, right));
    }
    out
}

pub(crate) fn consistency_check(g: &PcGroup) -> ConsistencyReport {
    let words = consistency_words(g, || ());
    let tests_run = words.len();
    let failures = words
        .into_iter()
        .filter(|(_, l, r)| l.exps != r.exps)
        .map(|(word, l, r)| ConsistencyFailure {
            word,
            left: l.exps,
            right: r.exps,
        })
        .collect();
    ConsistencyReport { tests_run, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn elementary_abelian_consistent() {
        let g = catalog("c2xc2", 2).unwrap();
        let rep = g.consistency_check();
        assert!(rep.passed());
        // no triples; one left and one right power overlap; two self overlaps
        assert_eq!(rep.tests_run, 1 + 1 + 2);
    }

    #[test]
    fn corrupted_dihedral_power_is_reported() {
        // D8 with g1^2 = g2 instead of 1: g1 would commute with g2 = g1^2,
        // contradicting [g2, g1] = g3.
        let bad = PcGroup::parse("p=2 n=3\ng1^2 = g2\ng2^2 = g3\n[g2,g1] = g3\n").unwrap();
        let rep = bad.consistency_check();
        assert!(!rep.passed());
        assert!(rep.failures.iter().all(|f| f.left != f.right));
    }
}
