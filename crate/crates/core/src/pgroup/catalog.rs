//! Named families of small p-groups.
//!
//! Names are factors joined by `x` (direct product):
//!
//! | factor        | group                                             |
//! |---------------|---------------------------------------------------|
//! | `trivial`     | order 1                                           |
//! | `c<N>`        | cyclic of order `N = p^k`                         |
//! | `v4`          | Klein four group (`p = 2`)                        |
//! | `d<N>`        | dihedral of order `N` (`p = 2`)                   |
//! | `q<N>`        | generalised quaternion of order `N` (`p = 2`)     |
//! | `sd<N>`       | semidihedral of order `N >= 16` (`p = 2`)         |
//! | `m<N>`        | modular group `⟨x, y | x^{N/p}, y^p, x^y = x^{1+N/p^2}⟩` |
//! | `heisenberg`  | upper unitriangular 3×3 matrices over F_p         |
//! | `wreath`      | `C_p ≀ C_p`, order `p^{p+1}`                      |
//! | `c<N>:c<M>`   | split metacyclic `C_N ⋊ C_M`                      |

use super::PcGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PcGroup,
}

fn log_p(p: u32, n: u64) -> Option<u32> {
    let mut k = 0;
    let mut acc = 1u64;
    while acc < n {
        acc = acc.checked_mul(p as u64)?;
        k += 1;
    }
    (acc == n).then_some(k)
}

fn zero_rels(n: usize) -> (Vec<Vec<u32>>, Vec<Vec<Vec<u32>>>) {
    let power = vec![vec![0; n]; n];
    let comm = (0..n).map(|i| vec![vec![0; n]; i]).collect();
    (power, comm)
}

/// Writes `x^t` (with `x` of order `p^m`) into `word` at positions
/// `offset .. offset + m`, where position `offset + a` holds `x^{p^a}`.
fn put_cyclic_power(word: &mut [u32], offset: usize, p: u32, m: usize, t: u64) {
    let modulus = (p as u64).pow(m as u32);
    let mut t = t % modulus;
    for a in 0..m {
        word[offset + a] = (t % p as u64) as u32;
        t /= p as u64;
    }
}

pub(crate) fn cyclic(p: u32, k: usize) -> Result<PcGroup> {
    let (mut power, comm) = zero_rels(k);
    for i in 0..k.saturating_sub(1) {
        power[i][i + 1] = 1;
    }
    PcGroup::new(p, power, comm)
}

/// `⟨x, y | x^{p^m}, y^{p^s} = x^{v} (s = 1 only), x^y = x^u⟩` with
/// pc-generators `y, x, x^p, …, x^{p^{m-1}}, y^p, …, y^{p^{s-1}}`.
fn metacyclic(p: u32, m: usize, s: usize, u: u64, v: u64) -> Result<PcGroup> {
    let n = 1 + m + (s - 1);
    let pm = (p as u64).pow(m as u32);
    let (mut power, mut comm) = zero_rels(n);
    if s == 1 {
        put_cyclic_power(&mut power[0], 1, p, m, v);
    } else {
        power[0][1 + m] = 1;
        for b in 1..(s - 1) {
            power[m + b][m + b + 1] = 1;
        }
    }
    for a in 0..m {
        if a + 1 < m {
            power[1 + a][2 + a] = 1;
        }
        let shift = (p as u64).pow(a as u32) * ((u + pm - 1) % pm) % pm;
        put_cyclic_power(&mut comm[1 + a][0], 1, p, m, shift);
    }
    PcGroup::new(p, power, comm)
}

fn heisenberg(p: u32) -> Result<PcGroup> {
    let (power, mut comm) = zero_rels(3);
    comm[1][0][2] = 1;
    PcGroup::new(p, power, comm)
}

fn wreath(p: u32) -> Result<PcGroup> {
    let n = p as usize + 1;
    let (power, mut comm) = zero_rels(n);
    for i in 1..p as usize {
        comm[i][0][i + 1] = 1;
    }
    PcGroup::new(p, power, comm)
}

/// Direct product; generators of `a` first, cross commutators trivial.
pub fn direct_product(a: &PcGroup, b: &PcGroup) -> Result<PcGroup> {
    if a.prime() != b.prime() {
        return Err(Error::Precondition("direct product of groups for different primes".into()));
    }
    let (na, nb) = (a.rank(), b.rank());
    let n = na + nb;
    let (mut power, mut comm) = zero_rels(n);
    for i in 0..na {
        power[i][..na].copy_from_slice(a.power_relation(i));
        for j in 0..i {
            comm[i][j][..na].copy_from_slice(a.commutator_relation(i, j));
        }
    }
    for i in 0..nb {
        power[na + i][na..].copy_from_slice(b.power_relation(i));
        for j in 0..i {
            comm[na + i][na + j][na..].copy_from_slice(b.commutator_relation(i, j));
        }
    }
    PcGroup::new(a.prime(), power, comm)
}

fn factor(name: &str, p: u32) -> Result<PcGroup> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    let order_exp = |digits: &str| -> Result<usize> {
        let n: u64 = digits.parse().map_err(|_| unknown())?;
        log_p(p, n).map(|k| k as usize).ok_or_else(unknown)
    };
    let two_only = |g: Result<PcGroup>| if p == 2 { g } else { Err(unknown()) };

    if name == "trivial" {
        return PcGroup::trivial(p);
    }
    if name == "heisenberg" {
        return heisenberg(p);
    }
    if name == "wreath" {
        return wreath(p);
    }
    if name == "v4" {
        return two_only(direct_product(&cyclic(2, 1)?, &cyclic(2, 1)?));
    }
    if let Some((left, right)) = name.split_once(':') {
        let m = order_exp(left.strip_prefix('c').ok_or_else(unknown)?)?;
        let s = order_exp(right.strip_prefix('c').ok_or_else(unknown)?)?;
        if m < 2 || s < 1 {
            return Err(unknown());
        }
        let pm = (p as u64).pow(m as u32);
        let u = if p == 2 { pm - 1 } else { 1 + pm / p as u64 };
        return metacyclic(p, m, s, u, 0);
    }
    if let Some(rest) = name.strip_prefix("sd") {
        let k = order_exp(rest)?;
        if k < 4 {
            return Err(unknown());
        }
        let m = k - 1;
        let pm = 1u64 << m;
        return two_only(metacyclic(2, m, 1, pm / 2 - 1, 0));
    }
    if let Some(rest) = name.strip_prefix('c') {
        return cyclic(p, order_exp(rest)?);
    }
    if let Some(rest) = name.strip_prefix('d') {
        let k = order_exp(rest)?;
        if k < 3 {
            return Err(unknown());
        }
        let m = k - 1;
        return two_only(metacyclic(2, m, 1, (1u64 << m) - 1, 0));
    }
    if let Some(rest) = name.strip_prefix('q') {
        let k = order_exp(rest)?;
        if k < 3 {
            return Err(unknown());
        }
        let m = k - 1;
        return two_only(metacyclic(2, m, 1, (1u64 << m) - 1, 1u64 << (m - 1)));
    }
    if let Some(rest) = name.strip_prefix('m') {
        let k = order_exp(rest)?;
        if k < 3 || (p == 2 && k < 4) {
            return Err(unknown());
        }
        let m = k - 1;
        let pm = (p as u64).pow(m as u32);
        return metacyclic(p, m, 1, 1 + pm / p as u64, 0);
    }
    Err(unknown())
}

/// Looks up a group by name, e.g. `c4`, `q8`, `heisenberg`, `d8xc2`.
pub fn catalog(name: &str, p: u32) -> Result<PcGroup> {
    let name = name.trim().to_ascii_lowercase();
    if name.is_empty() {
        return Err(Error::UnknownCatalog(name));
    }
    let mut acc: Option<PcGroup> = None;
    for part in name.split('x') {
        let g = factor(part, p)?;
        acc = Some(match acc {
            None => g,
            Some(a) => direct_product(&a, &g)?,
        });
    }
    Ok(acc.expect("at least one factor"))
}

/// Partitions of `k` into parts of size at most `max`, descending.
fn partitions(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn abelian_name(p: u32, parts: &[usize]) -> String {
    parts
        .iter()
        .map(|&a| format!("c{}", (p as u64).pow(a as u32)))
        .collect::<Vec<_>>()
        .join("x")
}

/// The test universe: every named group of order at most `max_order`, in a
/// fixed order (by order, then name).
pub fn catalog_universe(p: u32, max_order: u64) -> Vec<CatalogEntry> {
    let Some(max_k) = (0..=super::DEFAULT_MAX_RANK as u32)
        .rev()
        .find(|&k| (p as u64).checked_pow(k).is_some_and(|o| o <= max_order))
    else {
        return Vec::new();
    };
    let max_k = max_k as usize;
    let pu = p as u64;

    let mut abelian: Vec<(usize, String)> = vec![(0, "trivial".into())];
    for k in 1..=max_k {
        for parts in partitions(k, k) {
            abelian.push((k, abelian_name(p, &parts)));
        }
    }

    let mut bases: Vec<(usize, String)> = Vec::new();
    for k in 3..=max_k {
        let n = pu.pow(k as u32);
        if p == 2 {
            bases.push((k, format!("d{n}")));
            bases.push((k, format!("q{n}")));
            if k >= 4 {
                bases.push((k, format!("sd{n}")));
                bases.push((k, format!("m{n}")));
            }
        } else {
            bases.push((k, format!("m{n}")));
            if k == 3 {
                bases.push((k, "heisenberg".into()));
            }
        }
    }
    if (p as usize) < max_k && p > 2 {
        bases.push((p as usize + 1, "wreath".into()));
    }
    for m in 2..=max_k {
        for s in 2..=max_k {
            if m + s <= max_k {
                bases.push((m + s, format!("c{}:c{}", pu.pow(m as u32), pu.pow(s as u32))));
            }
        }
    }

    let mut names: Vec<(usize, String)> = abelian.clone();
    names.extend(bases.iter().cloned());
    for (kb, b) in &bases {
        for (ka, a) in abelian.iter().skip(1) {
            if kb + ka <= max_k {
                names.push((kb + ka, format!("{b}x{a}")));
            }
        }
    }
    let small: Vec<&(usize, String)> = bases.iter().filter(|(k, _)| *k == 3).collect();
    for (i, (ka, a)) in small.iter().enumerate() {
        for (kb, b) in small.iter().skip(i) {
            if ka + kb <= max_k {
                names.push((ka + kb, format!("{a}x{b}")));
            }
        }
    }
    names.sort();
    names.dedup();
    names
        .into_iter()
        .map(|(_, name)| {
            let group = catalog(&name, p).expect("universe names resolve");
            CatalogEntry { name, group }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_named_groups() {
        for (name, p, order) in [
            ("trivial", 2, 1),
            ("c4", 2, 4),
            ("v4", 2, 4),
            ("d8", 2, 8),
            ("q8", 2, 8),
            ("sd16", 2, 16),
            ("m16", 2, 16),
            ("c4:c4", 2, 16),
            ("heisenberg", 3, 27),
            ("m27", 3, 27),
            ("wreath", 3, 81),
            ("c9:c9", 3, 81),
            ("d8xc2xc2", 2, 32),
        ] {
            let g = catalog(name, p).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn unknown_or_mismatched_names() {
        assert!(catalog("d8", 3).is_err());
        assert!(catalog("c6", 2).is_err());
        assert!(catalog("frobnicate", 2).is_err());
        assert!(catalog("", 2).is_err());
        assert!(catalog("q4", 2).is_err());
    }

    #[test]
    fn every_order_eight_group_present() {
        let names: Vec<String> = catalog_universe(2, 8)
            .into_iter()
            .filter(|e| e.group.order() == 8)
            .map(|e| e.name)
            .collect();
        assert_eq!(names, ["c2xc2xc2", "c4xc2", "c8", "d8", "q8"]);
    }

    #[test]
    fn every_order_27_group_present() {
        let names: Vec<String> = catalog_universe(3, 27)
            .into_iter()
            .filter(|e| e.group.order() == 27)
            .map(|e| e.name)
            .collect();
        assert_eq!(names, ["c27", "c3xc3xc3", "c9xc3", "heisenberg", "m27"]);
    }

    #[test]
    fn universe_is_consistent() {
        for p in [2, 3] {
            for e in catalog_universe(p, if p == 2 { 64 } else { 243 }) {
                let rep = e.group.consistency_check();
                assert!(rep.passed(), "{} (p={p}): {:?}", e.name, rep.failures);
            }
        }
    }
}
