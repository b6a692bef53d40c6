//! Finite p-groups given by power-commutator presentations.
//!
//! A presentation on pc-generators `g_1, …, g_n` fixes, for each `i`, the
//! normal form of `g_i^p` in `g_{i+1}, …, g_n` and, for each `j < i`, the
//! normal form of the commutator `[g_i, g_j] = g_i^{-1} g_j^{-1} g_i g_j` in
//! `g_{j+1}, …, g_n`. Elements are exponent vectors `(e_1, …, e_n)` with
//! `0 <= e_i < p`, standing for `g_1^{e_1} ⋯ g_n^{e_n}`. Internally
//! generators are 0-based; the text format and docs use 1-based names.

mod catalog;
mod collect;
mod parse;
mod subgroup;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{FpVec, RowSpace};

pub use catalog::{catalog, catalog_universe, direct_product, CatalogEntry};
pub use collect::{ConsistencyFailure, ConsistencyReport, ConsistencyWord};
pub(crate) use collect::{consistency_words, TailSink};
pub use subgroup::{center, quotient, quotient_with_lifts, Subgroup};

/// Largest supported number of pc-generators unless a caller asks otherwise.
pub const DEFAULT_MAX_RANK: usize = 10;

/// Right-multiplication tables are cached for groups up to this order.
const TABLE_LIMIT: u64 = 1 << 17;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: Vec<u32>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { exps: vec![0; n] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        GroupElement { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::word_to_string(&self.exps))
    }
}

#[derive(Clone, Debug)]
pub struct PcGroup {
    p: u32,
    n: usize,
    power: Vec<Vec<u32>>,
    comm: Vec<Vec<Vec<u32>>>,
    table: OnceLock<Option<Arc<Vec<u32>>>>,
}

impl PartialEq for PcGroup {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.power == other.power && self.comm == other.comm
    }
}

impl Eq for PcGroup {}

pub(crate) fn is_small_prime(p: u32) -> bool {
    (2..128).contains(&p) && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PcGroup {
    /// Builds a presentation from dense relation data.
    ///
    /// `power[i]` is the exponent vector of `g_i^p`; `comm[i][j]` (for
    /// `j < i`) is the exponent vector of `[g_i, g_j]`. Consistency is not
    /// checked here; see [`PcGroup::consistency_check`].
    pub fn new(p: u32, power: Vec<Vec<u32>>, comm: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        Self::with_rank_cap(p, power, comm, DEFAULT_MAX_RANK)
    }

    pub fn with_rank_cap(
        p: u32,
        power: Vec<Vec<u32>>,
        comm: Vec<Vec<Vec<u32>>>,
        max_rank: usize,
    ) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let n = power.len();
        if n > max_rank {
            return Err(Error::OrderCap { n, cap: max_rank });
        }
        (p as u64)
            .checked_pow(n as u32)
            .ok_or(Error::Overflow("group order"))?;
        if comm.len() != n {
            return Err(Error::Dimension(format!("{} commutator rows for rank {n}", comm.len())));
        }
        for (i, w) in power.iter().enumerate() {
            check_word(p, n, w, i, &format!("g{}^p", i + 1))?;
        }
        for (i, row) in comm.iter().enumerate() {
            if row.len() != i {
                return Err(Error::Dimension(format!(
                    "commutator row {} has {} entries, expected {i}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, w) in row.iter().enumerate() {
                check_word(p, n, w, j, &format!("[g{},g{}]", i + 1, j + 1))?;
            }
        }
        Ok(PcGroup {
            p,
            n,
            power,
            comm,
            table: OnceLock::new(),
        })
    }

    /// The group of order 1.
    pub fn trivial(p: u32) -> Result<Self> {
        PcGroup::new(p, Vec::new(), Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_pc_presentation(text)
    }

    pub fn to_text(&self) -> String {
        parse::to_text(self)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Number of pc-generators; `|G| = p^rank`.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    /// The order as a `usize`, for dense algorithms.
    pub fn size(&self) -> usize {
        usize::try_from(self.order()).expect("group order fits in usize")
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 0
    }

    pub fn power_relation(&self, i: usize) -> &[u32] {
        &self.power[i]
    }

    /// Exponent vector of `[g_i, g_j]`, `j < i`.
    pub fn commutator_relation(&self, i: usize, j: usize) -> &[u32] {
        &self.comm[i][j]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.n)
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.identity();
        e.exps[i] = 1;
        e
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.n).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, exps: &[u32]) -> Result<GroupElement> {
        if exps.len() != self.n {
            return Err(Error::Dimension(format!("{} exponents for rank {}", exps.len(), self.n)));
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= self.p) {
            return Err(Error::ExponentRange(format!("exponent {e} not in [0, {})", self.p)));
        }
        Ok(GroupElement::from_exponents(exps.to_vec()))
    }

    /// Position of `x` in normal-form (lexicographic) order.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.exps
            .iter()
            .fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut exps = vec![0; self.n];
        for slot in exps.iter_mut().rev() {
            *slot = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        GroupElement { exps }
    }

    /// All elements in normal-form order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        if let Some(table) = self.table() {
            let mut cur = self.index_of(a);
            for (k, &e) in b.exps.iter().enumerate() {
                for _ in 0..e {
                    cur = table[cur * self.n + k] as usize;
                }
            }
            return self.element_at(cur);
        }
        let mut x = a.exps.clone();
        self.collect_word(&mut x, &b.exps, &mut ());
        GroupElement { exps: x }
    }

    /// Product on normal-form indices.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(table) => {
                let mut cur = a;
                let mut rest = b;
                let mut digits = vec![0u32; self.n];
                for slot in digits.iter_mut().rev() {
                    *slot = (rest % self.p as usize) as u32;
                    rest /= self.p as usize;
                }
                for (k, &e) in digits.iter().enumerate() {
                    for _ in 0..e {
                        cur = table[cur * self.n + k] as usize;
                    }
                }
                cur
            }
            None => self.index_of(&self.mul(&self.element_at(a), &self.element_at(b))),
        }
    }

    pub fn pow(&self, a: &GroupElement, mut e: u64) -> GroupElement {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let ord = self.element_order(a);
        self.pow(a, ord - 1)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    /// `b^{-1} a b`.
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(&self.mul(&self.inverse(b), a), b)
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let mut ord = 1u64;
        let mut x = a.clone();
        while !x.is_identity() {
            x = self.pow(&x, self.p as u64);
            ord *= self.p as u64;
        }
        ord
    }

    /// Largest element order.
    pub fn exponent(&self) -> u64 {
        self.elements().map(|x| self.element_order(&x)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        for i in 0..self.n {
            for j in 0..i {
                let c = self.commutator(&self.generator(i), &self.generator(j));
                if !c.is_identity() {
                    return false;
                }
            }
        }
        true
    }

    /// Dimension of the Frattini quotient `G / G^p [G, G]`, i.e. the minimal
    /// number of generators.
    ///
    /// In the abelianisation mod p every relation becomes a linear relation
    /// among the pc-generators, so `h1 = n - rank(relation exponent vectors)`.
    pub fn h1(&self) -> usize {
        self.n - self.frattini_relations().dim()
    }

    /// Row space spanned by the exponent vectors of all relation right-hand
    /// sides; `F_p^n` modulo this space is `G / Φ(G)`.
    pub(crate) fn frattini_relations(&self) -> RowSpace {
        let mut space = RowSpace::new(self.p, self.n);
        for w in &self.power {
            space.insert(FpVec::from_slice(self.p, w));
        }
        for row in &self.comm {
            for w in row {
                space.insert(FpVec::from_slice(self.p, w));
            }
        }
        space
    }

    /// Image of `x` in the Frattini quotient, as a reduced coordinate vector.
    pub fn frattini_image(&self, x: &GroupElement) -> FpVec {
        let rel = self.frattini_relations();
        let mut v = FpVec::from_slice(self.p, &x.exps);
        rel.reduce(&mut v);
        v
    }

    /// Burnside basis: the first pc-generators (in index order) whose
    /// Frattini images are independent.
    pub fn minimal_generating_set(&self) -> Vec<GroupElement> {
        self.minimal_generating_set_from(self.generators())
    }

    /// Greedy Frattini-independent selection from `candidates`.
    pub fn minimal_generating_set_from(
        &self,
        candidates: impl IntoIterator<Item = GroupElement>,
    ) -> Vec<GroupElement> {
        let rel = self.frattini_relations();
        let mut span = RowSpace::new(self.p, self.n);
        let mut out = Vec::new();
        let target = self.h1();
        for c in candidates {
            if out.len() == target {
                break;
            }
            let mut v = FpVec::from_slice(self.p, &c.exps);
            rel.reduce(&mut v);
            if span.insert(v) {
                out.push(c);
            }
        }
        out
    }

    /// Direct product `self × other`; the generators of `self` come first.
    pub fn direct_product(&self, other: &PcGroup) -> Result<PcGroup> {
        catalog::direct_product(self, other)
    }

    pub fn consistency_check(&self) -> ConsistencyReport {
        collect::consistency_check(self)
    }

    fn table(&self) -> Option<&Arc<Vec<u32>>> {
        self.table
            .get_or_init(|| {
                if self.order() > TABLE_LIMIT || self.n == 0 {
                    return None;
                }
                let size = self.size();
                let mut table = vec![0u32; size * self.n];
                for idx in 0..size {
                    let base = self.element_at(idx);
                    for k in 0..self.n {
                        let mut x = base.exps.clone();
                        self.collect_gen(&mut x, k, &mut ());
                        table[idx * self.n + k] = self.index_of(&GroupElement { exps: x }) as u32;
                    }
                }
                Some(Arc::new(table))
            })
            .as_ref()
    }

    /// `x <- x · g_k` by collection from the left.
    ///
    /// The part of `x` above `k` is conjugated past `g_k` letter by letter;
    /// every relation application is reported to `sink`.
    pub(crate) fn collect_gen<S: TailSink>(&self, x: &mut [u32], k: usize, sink: &mut S) {
        let suffix: Vec<(usize, u32)> = ((k + 1)..self.n)
            .filter(|&m| x[m] != 0)
            .map(|m| (m, x[m]))
            .collect();
        for &(m, _) in &suffix {
            x[m] = 0;
        }
        x[k] += 1;
        if x[k] == self.p {
            x[k] = 0;
            sink.power(k);
            self.collect_word(x, &self.power[k], sink);
        }
        for (m, e) in suffix {
            for _ in 0..e {
                // g_m^{g_k} = g_m [g_m, g_k]
                sink.conj(m, k);
                self.collect_gen(x, m, sink);
                self.collect_word(x, &self.comm[m][k], sink);
            }
        }
    }

    /// `x <- x · w` for a normal-form word `w`.
    pub(crate) fn collect_word<S: TailSink>(&self, x: &mut [u32], w: &[u32], sink: &mut S) {
        for (i, &e) in w.iter().enumerate() {
            for _ in 0..e {
                self.collect_gen(x, i, sink);
            }
        }
    }
}

fn check_word(p: u32, n: usize, w: &[u32], lower: usize, name: &str) -> Result<()> {
    if w.len() != n {
        return Err(Error::Dimension(format!("{name}: word of length {} for rank {n}", w.len())));
    }
    for (k, &e) in w.iter().enumerate() {
        if e >= p {
            return Err(Error::ExponentRange(format!("{name}: exponent {e} of g{} not in [0, {p})", k + 1)));
        }
        if e != 0 && k <= lower {
            return Err(Error::NonTriangular {
                relation: name.to_string(),
                generator: k + 1,
            });
        }
    }
    Ok(())
}
