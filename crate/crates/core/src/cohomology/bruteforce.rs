//! Cocycle equations solved directly over the multiplication table.
//!
//! A normalized cocycle is determined by its values `φ(a, s) = f(a, g_s)` on
//! pc-generators: along a spanning tree of the Cayley graph,
//! `f(a, w g_s) = f(a, w) + f(a w, g_s) - f(w, g_s)`. Writing `L(a, x)` for
//! the resulting linear form in the unknowns `φ`, a vector `φ` comes from a
//! cocycle iff `L(a,b) + φ(ab, s) = φ(b, s) + L(a, b g_s)` for every `a`, `b`
//! and generator `s` (the remaining triples follow by induction on the length
//! of the third argument). [`h2_full_table`] keeps the literal formulation
//! with every table entry an unknown, for small groups.

use super::{check_cap, default_cap, Cocycle2, ExtensionClass};
use crate::error::Result;
use crate::linalg::{FpVec, RowSpace};
use crate::pgroup::PcGroup;

pub(crate) struct CocycleSystem<'a> {
    g: &'a PcGroup,
    n: usize,
    size: usize,
    /// `L(a, x)` at `a * size + x`.
    forms: Vec<FpVec>,
}

impl<'a> CocycleSystem<'a> {
    pub(crate) fn new(g: &'a PcGroup) -> Self {
        let p = g.prime();
        let n = g.rank();
        let size = g.size();
        let cols = (size - 1) * n;
        let gens: Vec<usize> = (0..n).map(|s| g.index_of(&g.generator(s))).collect();

        // Breadth-first spanning tree: parent[x] = (w, s) with x = w g_s.
        let mut parent = vec![None; size];
        let mut order = vec![0usize];
        let mut seen = vec![false; size];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let w = order[head];
            head += 1;
            for (s, &gs) in gens.iter().enumerate() {
                let x = g.mul_index(w, gs);
                if !seen[x] {
                    seen[x] = true;
                    parent[x] = Some((w, s));
                    order.push(x);
                }
            }
        }

        let var = |y: usize, s: usize| (y - 1) * n + s;
        let mut forms = vec![FpVec::zero(p, cols); size * size];
        for a in 1..size {
            for &x in order.iter().skip(1) {
                let (w, s) = parent[x].expect("tree covers the group");
                let mut form = forms[a * size + w].clone();
                let aw = g.mul_index(a, w);
                if aw != 0 {
                    form.add_at(var(aw, s), 1);
                }
                if w != 0 {
                    form.add_at(var(w, s), p - 1);
                }
                forms[a * size + x] = form;
            }
        }
        CocycleSystem { g, n, size, forms }
    }

    fn cols(&self) -> usize {
        (self.size - 1) * self.n
    }

    fn var(&self, y: usize, s: usize) -> usize {
        (y - 1) * self.n + s
    }

    fn equations(&self) -> RowSpace {
        let p = self.g.prime();
        let gens: Vec<usize> = (0..self.n).map(|s| self.g.index_of(&self.g.generator(s))).collect();
        let mut space = RowSpace::new(p, self.cols());
        for a in 1..self.size {
            for b in 1..self.size {
                let ab = self.g.mul_index(a, b);
                for (s, &gs) in gens.iter().enumerate() {
                    let bs = self.g.mul_index(b, gs);
                    let mut row = self.forms[a * self.size + b].clone();
                    row.axpy(p - 1, &self.forms[a * self.size + bs]);
                    if ab != 0 {
                        row.add_at(self.var(ab, s), 1);
                    }
                    row.add_at(self.var(b, s), p - 1);
                    if !row.is_zero() {
                        space.insert(row);
                    }
                }
            }
        }
        space
    }

    /// Coboundaries `δc` of the point cochains, restricted to `(a, g_s)`.
    fn coboundaries(&self) -> RowSpace {
        let p = self.g.prime();
        let gens: Vec<usize> = (0..self.n).map(|s| self.g.index_of(&self.g.generator(s))).collect();
        let mut space = RowSpace::new(p, self.cols());
        for x in 1..self.size {
            let mut row = FpVec::zero(p, self.cols());
            for a in 1..self.size {
                for (s, &gs) in gens.iter().enumerate() {
                    let v = (a == x) as u32 + (gs == x) as u32 + (p - 1) * (self.g.mul_index(a, gs) == x) as u32;
                    if !v.is_multiple_of(p) {
                        row.add_at(self.var(a, s), v % p);
                    }
                }
            }
            space.insert(row);
        }
        space
    }

    fn table(&self, phi: &FpVec) -> Cocycle2 {
        let table = self.forms.iter().map(|form| form.dot(phi)).collect();
        Cocycle2::from_raw(self.g.prime(), self.size, table)
    }
}

/// Everything the brute-force solver learns about `H^2(G, Z/p)`.
#[derive(Clone, Debug)]
pub struct H2Data {
    pub dim_z2: usize,
    pub dim_b2: usize,
    /// Cocycles whose classes form a basis of `H^2`.
    pub basis: Vec<Cocycle2>,
}

impl H2Data {
    pub fn h2(&self) -> usize {
        self.dim_z2 - self.dim_b2
    }
}

fn solve(g: &PcGroup, cap: usize) -> Result<H2Data> {
    check_cap(g, cap)?;
    if g.is_trivial() {
        return Ok(H2Data {
            dim_z2: 0,
            dim_b2: 0,
            basis: Vec::new(),
        });
    }
    let system = CocycleSystem::new(g);
    let eqs = system.equations();
    let z2 = eqs.orthogonal_complement();
    let mut quotient = system.coboundaries();
    let dim_b2 = quotient.dim();
    let mut basis = Vec::new();
    for phi in z2.iter() {
        if quotient.insert(phi.clone()) {
            basis.push(system.table(phi));
        }
    }
    Ok(H2Data {
        dim_z2: z2.len(),
        dim_b2,
        basis,
    })
}

/// `h2` from the cocycle equations, for `|G|` up to the default cap.
pub fn h2_bruteforce(g: &PcGroup) -> Result<usize> {
    h2_bruteforce_with_cap(g, default_cap(g.prime()))
}

pub fn h2_bruteforce_with_cap(g: &PcGroup, cap: usize) -> Result<usize> {
    solve(g, cap).map(|d| d.h2())
}

/// The split class followed by `h2` classes forming a basis of `H^2`.
pub fn extension_basis(g: &PcGroup) -> Result<Vec<ExtensionClass>> {
    extension_basis_with_cap(g, default_cap(g.prime()))
}

pub fn extension_basis_with_cap(g: &PcGroup, cap: usize) -> Result<Vec<ExtensionClass>> {
    let data = solve(g, cap)?;
    let mut out = vec![ExtensionClass::split(g)];
    out.extend(data.basis.into_iter().map(|cocycle| ExtensionClass {
        base: g.clone(),
        cocycle,
    }));
    Ok(out)
}

/// Every class `Σ c_i ε_i` of `H^2`, indexed by `Σ c_i p^i` over the basis
/// returned by [`extension_basis`]; index 0 is the split class.
pub fn all_classes(basis: &[ExtensionClass]) -> impl Iterator<Item = (usize, ExtensionClass)> + '_ {
    let split = &basis[0];
    let gens = &basis[1..];
    let p = split.base.prime() as usize;
    let count = p.pow(gens.len() as u32);
    (0..count).map(move |idx| (idx, combination(split, gens, idx)))
}

pub(crate) fn combination(split: &ExtensionClass, gens: &[ExtensionClass], idx: usize) -> ExtensionClass {
    let p = split.base.prime() as usize;
    let mut f = split.cocycle.clone();
    let mut rest = idx;
    for e in gens {
        let c = (rest % p) as u32;
        rest /= p;
        if c != 0 {
            f = f.add(&e.cocycle.scale(c));
        }
    }
    ExtensionClass {
        base: split.base.clone(),
        cocycle: f,
    }
}

/// The literal oracle: every normalized table entry is an unknown and every
/// triple gives an equation. Capped at `|G| <= cap` (cubic in `|G|`).
pub fn h2_full_table(g: &PcGroup, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    let p = g.prime();
    let size = g.size();
    if size == 1 {
        return Ok(0);
    }
    let m = size - 1;
    let cols = m * m;
    let var = |a: usize, b: usize| -> Option<usize> { (a != 0 && b != 0).then(|| (a - 1) * m + (b - 1)) };
    let mut eqs = RowSpace::new(p, cols);
    for a in 1..size {
        for b in 1..size {
            let ab = g.mul_index(a, b);
            for c in 1..size {
                let bc = g.mul_index(b, c);
                let mut row = FpVec::zero(p, cols);
                for (x, y, sign) in [(a, b, 1), (ab, c, 1), (b, c, p - 1), (a, bc, p - 1)] {
                    if let Some(v) = var(x, y) {
                        row.add_at(v, sign);
                    }
                }
                if !row.is_zero() {
                    eqs.insert(row);
                }
            }
        }
    }
    let dim_z2 = cols - eqs.dim();
    let mut cob = RowSpace::new(p, cols);
    for x in 1..size {
        let mut row = FpVec::zero(p, cols);
        for a in 1..size {
            for b in 1..size {
                let v = (a == x) as u32 + (b == x) as u32 + (p - 1) * (g.mul_index(a, b) == x) as u32;
                if !v.is_multiple_of(p) {
                    row.add_at(var(a, b).unwrap(), v % p);
                }
            }
        }
        cob.insert(row);
    }
    Ok(dim_z2 - cob.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    fn h2(name: &str, p: u32) -> usize {
        h2_bruteforce(&catalog(name, p).unwrap()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(h2("trivial", 2), 0);
        assert_eq!(h2("c2", 2), 1);
        assert_eq!(h2("c3", 3), 1);
        assert_eq!(h2("c4", 2), 1);
        assert_eq!(h2("v4", 2), 3);
        assert_eq!(h2("c3xc3", 3), 3);
        // Q8 has trivial Schur multiplier: h2 = h1 = 2.
        assert_eq!(h2("q8", 2), 2);
        // D8: h1 = 2, multiplier Z/2, so h2 = 3.
        assert_eq!(h2("d8", 2), 3);
    }

    #[test]
    fn generator_system_matches_full_table() {
        for (name, p) in [("c4", 2), ("v4", 2), ("d8", 2), ("q8", 2), ("c4xc2", 2), ("c9", 3), ("c3xc3", 3), ("d16", 2)] {
            let g = catalog(name, p).unwrap();
            assert_eq!(h2_bruteforce(&g).unwrap(), h2_full_table(&g, 16).unwrap(), "{name}");
        }
    }

    #[test]
    fn basis_classes_are_cocycles_and_independent() {
        let g = catalog("v4", 2).unwrap();
        let basis = extension_basis(&g).unwrap();
        assert_eq!(basis.len(), 4);
        assert!(basis[0].cocycle.is_zero());
        for e in &basis {
            assert!(e.cocycle.satisfies_cocycle_identity(&g));
            assert!(e.cocycle.is_normalized());
        }
        let splits: Vec<bool> = all_classes(&basis).map(|(_, e)| e.is_split()).collect();
        assert_eq!(splits.len(), 8);
        assert_eq!(splits.iter().filter(|&&s| s).count(), 1);
        assert!(splits[0]);
    }
}
