use std::collections::{BTreeSet, VecDeque};

use super::{GroupElement, PcGroup};
use crate::error::{Error, Result};

/// A subgroup, stored as its generators together with the sorted
/// normal-form indices of all its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Closure of `gens` under multiplication.
    pub fn generated_by(g: &PcGroup, gens: &[GroupElement]) -> Subgroup {
        let gen_idx: Vec<usize> = gens.iter().map(|x| g.index_of(x)).collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(0usize);
        queue.push_back(0usize);
        while let Some(x) = queue.pop_front() {
            for &s in &gen_idx {
                let y = g.mul_index(x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            generators: gens.to_vec(),
            elements: seen.into_iter().collect(),
        }
    }

    pub fn trivial() -> Subgroup {
        Subgroup {
            generators: Vec::new(),
            elements: vec![0],
        }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Sorted normal-form indices.
    pub fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &PcGroup, x: &GroupElement) -> bool {
        self.elements.binary_search(&g.index_of(x)).is_ok()
    }

    pub fn is_normal(&self, g: &PcGroup) -> bool {
        let gens = g.generators();
        self.generators.iter().all(|h| {
            gens.iter()
                .all(|s| self.contains(g, &g.conjugate(h, s)))
        })
    }

    pub fn is_central(&self, g: &PcGroup) -> bool {
        let gens = g.generators();
        self.generators
            .iter()
            .all(|h| gens.iter().all(|s| g.mul(h, s) == g.mul(s, h)))
    }
}

/// The center, computed by testing every element against the pc-generators.
pub fn center(g: &PcGroup) -> Subgroup {
    let gens = g.generators();
    let central: Vec<usize> = (0..g.size())
        .filter(|&x| {
            let gx = g.element_at(x);
            gens.iter().all(|s| g.mul(&gx, s) == g.mul(s, &gx))
        })
        .collect();
    Subgroup {
        generators: central.iter().skip(1).map(|&x| g.element_at(x)).collect(),
        elements: central,
    }
}

/// Canonical coset representative (smallest index) for every element.
fn coset_labels(g: &PcGroup, n: &Subgroup) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.size()];
    for x in 0..g.size() {
        if label[x] != usize::MAX {
            continue;
        }
        for &h in &n.elements {
            label[g.mul_index(x, h)] = x;
        }
    }
    label
}

/// `G / N` for a normal subgroup `N`, with pc-generators the images of those
/// `g_i` that are not absorbed into `⟨g_{i+1}, …, g_n⟩ N`.
pub fn quotient(g: &PcGroup, n: &Subgroup) -> Result<PcGroup> {
    quotient_with_lifts(g, n).map(|(q, _)| q)
}

/// [`quotient`], also returning for each pc-generator of `G / N` the index
/// of the pc-generator of `G` it is the image of.
pub fn quotient_with_lifts(g: &PcGroup, n: &Subgroup) -> Result<(PcGroup, Vec<usize>)> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let label = coset_labels(g, n);
    let size = g.size();

    // Tail subgroups G_i N, as sets of coset labels.
    let mut kept = Vec::new();
    let mut covered: BTreeSet<usize> = n.elements.iter().map(|&x| label[x]).collect();
    let mut tail: Vec<GroupElement> = n.generators.clone();
    for i in (0..g.rank()).rev() {
        tail.push(g.generator(i));
        let sub = Subgroup::generated_by(g, &tail);
        let cosets: BTreeSet<usize> = sub.elements.iter().map(|&x| label[x]).collect();
        if cosets.len() > covered.len() {
            kept.push(i);
        }
        covered = cosets;
    }
    kept.reverse();
    let m = kept.len();

    // Every coset is hit exactly once by the products over kept generators.
    let p = g.prime();
    let mut exps_of_coset = vec![None; size];
    for idx in 0..(p as usize).pow(m as u32) {
        let mut digits = vec![0u32; m];
        let mut rest = idx;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        let mut x = g.identity();
        for (&gi, &e) in kept.iter().zip(&digits) {
            x = g.mul(&x, &g.pow(&g.generator(gi), e as u64));
        }
        let l = label[g.index_of(&x)];
        if exps_of_coset[l].replace(digits).is_some() {
            return Err(Error::Inconsistent("quotient normal form is not unique".into()));
        }
    }
    let nf = |x: &GroupElement| -> Vec<u32> {
        exps_of_coset[label[g.index_of(x)]]
            .clone()
            .expect("every coset has a normal form")
    };

    let power = kept
        .iter()
        .map(|&i| nf(&g.pow(&g.generator(i), p as u64)))
        .collect();
    let comm = (0..m)
        .map(|a| {
            (0..a)
                .map(|b| nf(&g.commutator(&g.generator(kept[a]), &g.generator(kept[b]))))
                .collect()
        })
        .collect();
    Ok((PcGroup::new(p, power, comm)?, kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn center_of_q8_has_order_two() {
        let q8 = catalog("q8", 2).unwrap();
        let z = center(&q8);
        assert_eq!(z.order(), 2);
        assert!(z.is_central(&q8));
    }

    #[test]
    fn quotient_of_c4_by_its_square() {
        let c4 = catalog("c4", 2).unwrap();
        let n = Subgroup::generated_by(&c4, &[c4.generator(1)]);
        let q = quotient(&c4, &n).unwrap();
        assert_eq!(q, catalog("c2", 2).unwrap());
    }

    #[test]
    fn quotient_by_non_normal_subgroup_fails() {
        let d8 = catalog("d8", 2).unwrap();
        let reflection = Subgroup::generated_by(&d8, &[d8.generator(0)]);
        assert_eq!(quotient(&d8, &reflection).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn quotient_by_non_generator_central_element() {
        // C4 × C2 by the diagonal element of order 2.
        let g = catalog("c4xc2", 2).unwrap();
        let z = g.element(&[0, 1, 1]).unwrap();
        let n = Subgroup::generated_by(&g, &[z]);
        let q = quotient(&g, &n).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.consistency_check().passed());
        assert_eq!(q.h1(), 1);
    }
}
