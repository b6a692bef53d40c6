//! Second cohomology `H^2(G, Z/p)` with trivial action and the central
//! extensions `1 -> Z/p -> G' -> G -> 1` it classifies.
//!
//! Two independent routes to `h2 = dim H^2(G, Z/p)`:
//!
//! * [`h2_bruteforce`] solves the cocycle equations over the multiplication
//!   table (the reference oracle, capped in size);
//! * [`h2_fast`] extends the pc-presentation by one central tail per relation
//!   and reads off the rank of the p-multiplicator.

mod bounds;
mod bruteforce;
mod extension;
mod multiplicator;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::MatrixJson;
use crate::pgroup::PcGroup;

pub use bounds::{verify_h_bounds, verify_h_bounds_with, BoundEntry, HBoundsReport, SweepPolicy};
pub use bruteforce::{
    all_classes, extension_basis, extension_basis_with_cap, h2_bruteforce, h2_bruteforce_with_cap,
    h2_full_table, H2Data,
};
pub use extension::{is_split, total_group, ExtensionInvariants};
pub use multiplicator::{h2_fast, p_multiplicator_rank};

/// Default brute-force cap on `|G|`: 64 for `p = 2`, 81 otherwise.
pub fn default_cap(p: u32) -> usize {
    if p == 2 {
        64
    } else {
        81
    }
}

pub(crate) fn check_cap(g: &PcGroup, cap: usize) -> Result<()> {
    if g.order() > cap as u64 {
        return Err(Error::CapExceeded {
            order: usize::try_from(g.order()).unwrap_or(usize::MAX),
            cap,
        });
    }
    Ok(())
}

/// A normalized 2-cocycle `f : G × G -> F_p`, stored as a dense table
/// indexed by normal-form positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    p: u32,
    size: usize,
    table: Vec<u32>,
}

impl Cocycle2 {
    pub fn zero(g: &PcGroup) -> Self {
        let size = g.size();
        Cocycle2 {
            p: g.prime(),
            size,
            table: vec![0; size * size],
        }
    }

    /// Validates shape, normalization and the cocycle identity.
    pub fn from_table(g: &PcGroup, table: Vec<u32>) -> Result<Self> {
        let size = g.size();
        if table.len() != size * size {
            return Err(Error::Dimension(format!("cocycle table has {} entries, expected {}", table.len(), size * size)));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= g.prime()) {
            return Err(Error::ExponentRange(format!("cocycle value {v} not in [0, {})", g.prime())));
        }
        let f = Cocycle2 {
            p: g.prime(),
            size,
            table,
        };
        if !f.is_normalized() {
            return Err(Error::Precondition("cocycle is not normalized".into()));
        }
        if !f.satisfies_cocycle_identity(g) {
            return Err(Error::Precondition("table violates the cocycle identity".into()));
        }
        Ok(f)
    }

    /// `δc(a, b) = c(a) + c(b) - c(ab)` for a 1-cochain with `c(e) = 0`.
    pub fn coboundary(g: &PcGroup, c: &[u32]) -> Self {
        let p = g.prime();
        let size = g.size();
        assert_eq!(c.len(), size, "cochain length");
        let mut table = vec![0; size * size];
        for a in 1..size {
            for b in 1..size {
                let ab = g.mul_index(a, b);
                table[a * size + b] = (c[a] + c[b] + p - c[ab] % p) % p;
            }
        }
        Cocycle2 { p, size, table }
    }

    pub(crate) fn from_raw(p: u32, size: usize, table: Vec<u32>) -> Self {
        Cocycle2 { p, size, table }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Order of the base group.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.size + b]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        assert_eq!(self.size, other.size);
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Cocycle2::from_raw(self.p, self.size, table)
    }

    pub fn scale(&self, c: u32) -> Cocycle2 {
        let table = self.table.iter().map(|&a| a * (c % self.p) % self.p).collect();
        Cocycle2::from_raw(self.p, self.size, table)
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.size).all(|x| self.get(0, x) == 0 && self.get(x, 0) == 0)
    }

    /// `f(a,b) + f(ab,c) = f(b,c) + f(a,bc)` for all triples.
    pub fn satisfies_cocycle_identity(&self, g: &PcGroup) -> bool {
        let p = self.p;
        (0..self.size).all(|a| {
            (0..self.size).all(|b| {
                let ab = g.mul_index(a, b);
                (0..self.size).all(|c| {
                    let bc = g.mul_index(b, c);
                    (self.get(a, b) + self.get(ab, c)) % p == (self.get(b, c) + self.get(a, bc)) % p
                })
            })
        })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            p: self.p,
            dim: self.size,
            rows: self.table.chunks(self.size.max(1)).map(|r| r.to_vec()).collect(),
        }
    }
}

/// A central extension of `base` by `Z/p`, represented by a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionClass {
    pub base: PcGroup,
    pub cocycle: Cocycle2,
}

impl ExtensionClass {
    pub fn new(base: PcGroup, cocycle: Cocycle2) -> Result<Self> {
        if cocycle.size() != base.size() || cocycle.prime() != base.prime() {
            return Err(Error::Dimension("cocycle does not match the base group".into()));
        }
        Ok(ExtensionClass { base, cocycle })
    }

    /// The split extension `G × Z/p`.
    pub fn split(base: &PcGroup) -> Self {
        ExtensionClass {
            cocycle: Cocycle2::zero(base),
            base: base.clone(),
        }
    }

    pub fn is_split(&self) -> bool {
        extension::is_split(self)
    }

    pub fn total_group(&self) -> PcGroup {
        extension::total_group(self)
    }
}

/// h1/h2 summary used by reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub h1: usize,
    pub h2: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn coboundaries_are_cocycles() {
        let g = catalog("d8", 2).unwrap();
        let c: Vec<u32> = (0..8).map(|i| if i == 0 { 0 } else { (i as u32 * 5 + 1) % 2 }).collect();
        let f = Cocycle2::coboundary(&g, &c);
        assert!(f.is_normalized());
        assert!(f.satisfies_cocycle_identity(&g));
        assert!(Cocycle2::from_table(&g, f.table().to_vec()).is_ok());
    }

    #[test]
    fn from_table_rejects_non_cocycles() {
        let g = catalog("c3", 3).unwrap();
        let mut t = vec![0; 9];
        t[4] = 1; // f(g, g) = 1 only
        assert!(Cocycle2::from_table(&g, t).is_err());
        assert!(Cocycle2::from_table(&g, vec![0; 8]).is_err());
    }

    #[test]
    fn cap_is_reported() {
        let g = catalog("c2xc2xc2xc2xc2xc2xc2", 2).unwrap();
        assert!(matches!(h2_bruteforce(&g), Err(Error::CapExceeded { order: 128, cap: 64 })));
    }
}
