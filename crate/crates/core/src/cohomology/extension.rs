use serde::Serialize;

use super::ExtensionClass;
use crate::linalg::{FpVec, RowSpace};
use crate::pgroup::{center, PcGroup};

/// `G × Z/p` with `(a, x)(b, y) = (ab, x + y + f(a, b))`, on indices.
struct Twisted<'a> {
    ext: &'a ExtensionClass,
    inv: Vec<usize>,
}

impl<'a> Twisted<'a> {
    fn new(ext: &'a ExtensionClass) -> Self {
        let g = &ext.base;
        let size = g.size();
        let mut inv = vec![0; size];
        for a in 0..size {
            for b in 0..size {
                if g.mul_index(a, b) == 0 {
                    inv[a] = b;
                    break;
                }
            }
        }
        Twisted { ext, inv }
    }

    fn p(&self) -> u32 {
        self.ext.base.prime()
    }

    fn mul(&self, (a, x): (usize, u32), (b, y): (usize, u32)) -> (usize, u32) {
        let f = self.ext.cocycle.get(a, b);
        (self.ext.base.mul_index(a, b), (x + y + f) % self.p())
    }

    fn inverse(&self, (a, x): (usize, u32)) -> (usize, u32) {
        let ai = self.inv[a];
        let p = self.p();
        let f = self.ext.cocycle.get(a, ai);
        (ai, (2 * p - x - f) % p)
    }

    fn pow(&self, x: (usize, u32), e: u32) -> (usize, u32) {
        (0..e).fold((0, 0), |acc, _| self.mul(acc, x))
    }
}

/// The total group `G'` as a pc-presentation on the lifts `(g_i, 0)` of the
/// pc-generators of `G` followed by the kernel generator `z = (e, 1)`.
/// Deleting `z` from every relation gives back the presentation of `G`.
pub fn total_group(ext: &ExtensionClass) -> PcGroup {
    let g = &ext.base;
    let p = g.prime();
    let n = g.rank();
    let tw = Twisted::new(ext);
    let lift = |i: usize| (g.index_of(&g.generator(i)), 0u32);

    // Normal form of (a, x): exponents of a, then x - σ(a) where
    // σ(a) is the second coordinate of the product of lifted letters.
    let sigma = |a: usize| -> u32 {
        let exps = g.element_at(a);
        let mut acc = (0usize, 0u32);
        for (i, &e) in exps.exponents().iter().enumerate() {
            acc = tw.mul(acc, tw.pow(lift(i), e));
        }
        debug_assert_eq!(acc.0, a);
        acc.1
    };
    let normal_form = |(a, x): (usize, u32)| -> Vec<u32> {
        let mut w = g.element_at(a).exponents().to_vec();
        w.push((x + p - sigma(a)) % p);
        w
    };

    let mut power = Vec::with_capacity(n + 1);
    for i in 0..n {
        power.push(normal_form(tw.pow(lift(i), p)));
    }
    power.push(vec![0; n + 1]);
    let mut comm: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let row = (0..i)
            .map(|j| {
                let (a, b) = (lift(i), lift(j));
                let c = tw.mul(tw.mul(tw.inverse(a), tw.inverse(b)), tw.mul(a, b));
                normal_form(c)
            })
            .collect();
        comm.push(row);
    }
    comm.push(vec![vec![0; n + 1]; n]);
    PcGroup::with_rank_cap(p, power, comm, n + 1).expect("total group relations are triangular")
}

/// Whether the cocycle is a coboundary `f = δc`, i.e. the extension splits.
pub fn is_split(ext: &ExtensionClass) -> bool {
    let g = &ext.base;
    let p = g.prime();
    let size = g.size();
    if size == 1 {
        return true;
    }
    // Unknowns c(1..size); augmented column holds f(a, b).
    let cols = size;
    let mut coeffs = RowSpace::new(p, cols - 1);
    let mut augmented = RowSpace::new(p, cols);
    for a in 1..size {
        for b in 1..size {
            let ab = g.mul_index(a, b);
            let mut row = FpVec::zero(p, cols);
            row.add_at(a - 1, 1);
            row.add_at(b - 1, 1);
            if ab != 0 {
                row.add_at(ab - 1, p - 1);
            }
            let mut lhs = FpVec::zero(p, cols - 1);
            for k in 0..cols - 1 {
                lhs.set(k, row.get(k));
            }
            row.set(cols - 1, ext.cocycle.get(a, b));
            coeffs.insert(lhs);
            augmented.insert(row);
        }
    }
    coeffs.dim() == augmented.dim()
}

/// Cheap isomorphism invariants of a total group, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionInvariants {
    pub order: u64,
    pub exponent: u64,
    pub abelian: bool,
    pub center_order: usize,
}

impl ExtensionInvariants {
    pub fn of(g: &PcGroup) -> Self {
        ExtensionInvariants {
            order: g.order(),
            exponent: g.exponent(),
            abelian: g.is_abelian(),
            center_order: center(g).order(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{all_classes, extension_basis, Cocycle2};
    use crate::pgroup::{catalog, Subgroup};

    #[test]
    fn split_total_group_is_direct_product() {
        let g = catalog("d8", 2).unwrap();
        let t = ExtensionClass::split(&g).total_group();
        assert_eq!(t, catalog("d8xc2", 2).unwrap());
    }

    #[test]
    fn nonzero_class_over_cyclic_gives_cyclic_square() {
        for p in [2, 3, 5] {
            let g = catalog(&format!("c{p}"), p).unwrap();
            let basis = extension_basis(&g).unwrap();
            assert_eq!(basis.len(), 2);
            let t = basis[1].total_group();
            assert!(t.consistency_check().passed());
            assert_eq!(t.order(), (p * p) as u64);
            assert_eq!(t.exponent(), (p * p) as u64);
            assert!(!basis[1].is_split());
        }
    }

    #[test]
    fn order_eight_totals_over_klein_group() {
        let g = catalog("v4", 2).unwrap();
        let basis = extension_basis(&g).unwrap();
        let mut invariants: Vec<(bool, u64, usize)> = all_classes(&basis)
            .map(|(_, e)| {
                let t = e.total_group();
                assert!(t.consistency_check().passed());
                let inv = ExtensionInvariants::of(&t);
                (inv.abelian, inv.exponent, inv.center_order)
            })
            .collect();
        invariants.sort();
        invariants.dedup();
        // D8 and Q8 (both exponent 4, centre 2; told apart by element
        // orders), C4 × C2 and the split C2^3.
        assert!(invariants.contains(&(true, 2, 8)));
        assert!(invariants.contains(&(true, 4, 8)));
        assert!(invariants.contains(&(false, 4, 2)));
        let q8_like = all_classes(&basis).any(|(_, e)| {
            let t = e.total_group();
            t.elements().filter(|x| t.element_order(x) == 2).count() == 1
        });
        assert!(q8_like);
    }

    #[test]
    fn kernel_is_central_and_quotient_is_base() {
        for (name, p) in [("d8", 2), ("c9", 3), ("heisenberg", 3)] {
            let g = catalog(name, p).unwrap();
            for (_, e) in all_classes(&extension_basis(&g).unwrap()).take(9) {
                let t = e.total_group();
                assert!(t.consistency_check().passed());
                let z = Subgroup::generated_by(&t, &[t.generator(t.rank() - 1)]);
                assert!(z.is_central(&t));
                let q = crate::pgroup::quotient(&t, &z).unwrap();
                assert_eq!(q, g);
            }
        }
    }

    #[test]
    fn coboundaries_split() {
        let g = catalog("q8", 2).unwrap();
        let c: Vec<u32> = (0..8).map(|i| (i as u32 % 3 == 1) as u32).collect();
        let ext = ExtensionClass::new(g.clone(), Cocycle2::coboundary(&g, &c)).unwrap();
        assert!(ext.is_split());
    }
}
