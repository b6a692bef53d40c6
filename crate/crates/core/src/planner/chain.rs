//! Chief chains `1 = G_0 <- G_1 <- … <- G_n = Γ` with central kernels of
//! order p, each step recorded as a cocycle over the smaller group.

use crate::cohomology::{total_group, Cocycle2, ExtensionClass};
use crate::error::{Error, Result};
use crate::pgroup::{center, quotient_with_lifts, GroupElement, PcGroup, Subgroup};

/// Which central subgroup of order p to factor out at each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainSelector {
    /// Generated by the central element of order p with the smallest
    /// normal-form index.
    #[default]
    First,
    /// ... with the largest index.
    Last,
}

/// `G_i` together with the extension `1 -> Z/p -> G_i -> G_{i-1} -> 1`.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub group: PcGroup,
    pub extension: ExtensionClass,
    pub split: bool,
}

/// Whether `g_i ↦ images[i]` extends to a homomorphism from the group
/// presented by `pres` onto `target`, which is then an isomorphism when the
/// orders agree.
pub fn presentation_maps_onto(pres: &PcGroup, target: &PcGroup, images: &[GroupElement]) -> bool {
    if images.len() != pres.rank() || pres.order() != target.order() || pres.prime() != target.prime() {
        return false;
    }
    let p = pres.prime() as u64;
    let eval = |w: &[u32]| {
        w.iter()
            .zip(images)
            .fold(target.identity(), |acc, (&e, x)| target.mul(&acc, &target.pow(x, e as u64)))
    };
    for i in 0..pres.rank() {
        if target.pow(&images[i], p) != eval(pres.power_relation(i)) {
            return false;
        }
        for j in 0..i {
            if target.commutator(&images[i], &images[j]) != eval(pres.commutator_relation(i, j)) {
                return false;
            }
        }
    }
    Subgroup::generated_by(target, images).order() as u64 == target.order()
}

fn central_element_of_order_p(g: &PcGroup, sel: ChainSelector) -> GroupElement {
    let z = center(g);
    let mut candidates = z
        .element_indices()
        .iter()
        .copied()
        .filter(|&i| i != 0)
        .map(|i| g.element_at(i))
        .filter(|x| g.element_order(x) == g.prime() as u64);
    match sel {
        ChainSelector::First => candidates.next(),
        ChainSelector::Last => candidates.last(),
    }
    .expect("a nontrivial p-group has central elements of order p")
}

/// Cocycle of `big -> small = big / ⟨z⟩` for the section
/// `s(a) = Π lift_k^{a_k}`: `s(a) s(b) = s(ab) z^{f(a,b)}`.
fn section_cocycle(big: &PcGroup, small: &PcGroup, lifts: &[GroupElement], z: &GroupElement) -> Result<Cocycle2> {
    let p = big.prime();
    let size = small.size();
    let section: Vec<GroupElement> = small
        .elements()
        .map(|a| {
            a.exponents()
                .iter()
                .zip(lifts)
                .fold(big.identity(), |acc, (&e, l)| big.mul(&acc, &big.pow(l, e as u64)))
        })
        .collect();
    let zpow: Vec<usize> = (0..p).map(|t| big.index_of(&big.pow(z, t as u64))).collect();
    let inv: Vec<GroupElement> = section.iter().map(|x| big.inverse(x)).collect();
    let mut table = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            let ab = small.mul_index(a, b);
            let w = big.mul(&inv[ab], &big.mul(&section[a], &section[b]));
            let wi = big.index_of(&w);
            let t = zpow
                .iter()
                .position(|&zi| zi == wi)
                .ok_or_else(|| Error::Inconsistent("section defect is not in the kernel".into()))?;
            table[a * size + b] = t as u32;
        }
    }
    Cocycle2::from_table(small, table)
}

pub fn chief_chain(gamma: &PcGroup) -> Result<Vec<ChainStep>> {
    chief_chain_with(gamma, ChainSelector::First)
}

pub fn chief_chain_with(gamma: &PcGroup, sel: ChainSelector) -> Result<Vec<ChainStep>> {
    let mut steps = Vec::new();
    let mut cur = gamma.clone();
    while !cur.is_trivial() {
        let z = central_element_of_order_p(&cur, sel);
        let kernel = Subgroup::generated_by(&cur, std::slice::from_ref(&z));
        let (small, kept) = quotient_with_lifts(&cur, &kernel)?;
        let lifts: Vec<GroupElement> = kept.iter().map(|&k| cur.generator(k)).collect();
        let cocycle = section_cocycle(&cur, &small, &lifts, &z)?;
        let extension = ExtensionClass::new(small.clone(), cocycle)?;

        let mut images = lifts.clone();
        images.push(z.clone());
        if !presentation_maps_onto(&total_group(&extension), &cur, &images) {
            return Err(Error::Inconsistent("extension does not reconstruct the chain group".into()));
        }
        let split = extension.is_split();
        steps.push(ChainStep {
            group: cur,
            extension,
            split,
        });
        cur = small;
    }
    steps.reverse();
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn cyclic_square() {
        for p in [2, 3] {
            let g = catalog(&format!("c{}", p * p), p).unwrap();
            let chain = chief_chain(&g).unwrap();
            assert_eq!(chain.len(), 2);
            assert_eq!(chain[0].group.order(), p as u64);
            assert!(chain[0].split);
            assert!(!chain[1].split);
        }
    }

    #[test]
    fn elementary_abelian_all_split() {
        let chain = chief_chain(&catalog("c3xc3", 3).unwrap()).unwrap();
        assert!(chain.iter().all(|s| s.split));
    }

    #[test]
    fn quaternion_last_step_nonsplit() {
        let q8 = catalog("q8", 2).unwrap();
        for sel in [ChainSelector::First, ChainSelector::Last] {
            let chain = chief_chain_with(&q8, sel).unwrap();
            assert_eq!(chain.len(), 3);
            assert_eq!(chain[1].group.h1(), 2);
            assert!(!chain[2].split);
            assert_eq!(chain[2].group, q8);
        }
    }
}
