//! Finite `F_p[G]`-modules given by generator-action matrices.
//!
//! The group algebra `F_p[G]` is identified with `F_p^{|G|}` via the
//! normal-form order of `G`. Actions are on the left and matrices act on
//! column vectors: `ρ(g h) = ρ(g) ρ(h)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVec, MatrixJson, RowSpace};
use crate::pgroup::{GroupElement, PcGroup, Subgroup};

/// An element of `F_p[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraVector {
    coeffs: FpVec,
}

impl AlgebraVector {
    pub fn zero(g: &PcGroup) -> Self {
        AlgebraVector {
            coeffs: FpVec::zero(g.prime(), g.size()),
        }
    }

    /// The basis element `x` of the group algebra.
    pub fn group_element(g: &PcGroup, x: &GroupElement) -> Self {
        AlgebraVector {
            coeffs: FpVec::unit(g.prime(), g.size(), g.index_of(x)),
        }
    }

    pub fn from_coeffs(g: &PcGroup, coeffs: FpVec) -> Result<Self> {
        if coeffs.len() != g.size() || coeffs.prime() != g.prime() {
            return Err(Error::Dimension(format!("{} coefficients for |G| = {}", coeffs.len(), g.size())));
        }
        Ok(AlgebraVector { coeffs })
    }

    pub fn coeffs(&self) -> &FpVec {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraVector {
            coeffs: self.coeffs.add(&other.coeffs),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut c = self.coeffs.clone();
        c.axpy(c.prime() - 1, &other.coeffs);
        AlgebraVector { coeffs: c }
    }

    /// Convolution product in `F_p[G]`.
    pub fn mul(&self, g: &PcGroup, other: &Self) -> Self {
        let p = g.prime();
        let size = g.size();
        let a = self.coeffs.to_vec();
        let b = other.coeffs.to_vec();
        let mut out = vec![0u64; size];
        for (x, &ax) in a.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (y, &by) in b.iter().enumerate().filter(|(_, &v)| v != 0) {
                out[g.mul_index(x, y)] += ax as u64 * by as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|v| (v % p as u64) as u32).collect();
        AlgebraVector {
            coeffs: FpVec::from_slice(p, &out),
        }
    }

    /// Left multiplication by a group element.
    pub fn left_translate(&self, g: &PcGroup, x: &GroupElement) -> Self {
        let xi = g.index_of(x);
        let mut out = FpVec::zero(g.prime(), g.size());
        for y in 0..g.size() {
            let c = self.coeffs.get(y);
            if c != 0 {
                out.set(g.mul_index(xi, y), c);
            }
        }
        AlgebraVector { coeffs: out }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from_vector(&self.coeffs)
    }
}

/// `T_G = Σ_{g ∈ G} g`.
pub fn trace_element(g: &PcGroup) -> AlgebraVector {
    let ones = vec![1; g.size()];
    AlgebraVector {
        coeffs: FpVec::from_slice(g.prime(), &ones),
    }
}

/// `x_i = s_i - 1` for the Burnside basis `s_1, …, s_{h1}` of `G`.
pub fn augmentation_generators(g: &PcGroup) -> Vec<AlgebraVector> {
    augmentation_generators_from(g, &g.minimal_generating_set())
}

pub fn augmentation_generators_from(g: &PcGroup, gens: &[GroupElement]) -> Vec<AlgebraVector> {
    let one = AlgebraVector::group_element(g, &g.identity());
    gens.iter()
        .map(|s| AlgebraVector::group_element(g, s).sub(&one))
        .collect()
}

/// Dimension of the left ideal `F_p[G] x_1 + … + F_p[G] x_k`.
pub fn left_ideal_dim(g: &PcGroup, gens: &[AlgebraVector]) -> usize {
    let mut space = RowSpace::new(g.prime(), g.size());
    for x in gens {
        for h in g.elements() {
            space.insert(x.left_translate(g, &h).coeffs);
        }
    }
    space.dim()
}

/// A finite-dimensional `F_p[G]`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    p: u32,
    dim: usize,
    /// `ρ(g_i)` for the pc-generators.
    actions: Vec<FpMatrix>,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GModuleJson {
    pub p: u32,
    pub dim: usize,
    pub actions: Vec<MatrixJson>,
}

impl GModule {
    /// Checks `ρ(g_i)^p = ρ(w_i)` and `ρ(g_i) ρ(g_j) = ρ(g_j) ρ(g_i) ρ(w_ij)`.
    pub fn new(g: &PcGroup, actions: Vec<FpMatrix>) -> Result<Self> {
        let p = g.prime();
        if actions.len() != g.rank() {
            return Err(Error::Dimension(format!("{} action matrices for rank {}", actions.len(), g.rank())));
        }
        let dim = actions.first().map_or(0, |m| m.rows());
        for (i, m) in actions.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.prime() != p {
                return Err(Error::Dimension(format!("action matrix for g{} is not {dim}x{dim} over F_{p}", i + 1)));
            }
        }
        let module = GModule {
            p,
            dim,
            actions,
            label: None,
        };
        for i in 0..g.rank() {
            let lhs = module.actions[i].pow(p as u64);
            if lhs != module.word(g.power_relation(i)) {
                return Err(Error::RelationViolated(format!("g{}^p", i + 1)));
            }
            for j in 0..i {
                let lhs = module.actions[i].mul(&module.actions[j]);
                let rhs = module.actions[j]
                    .mul(&module.actions[i])
                    .mul(&module.word(g.commutator_relation(i, j)));
                if lhs != rhs {
                    return Err(Error::RelationViolated(format!("[g{},g{}]", i + 1, j + 1)));
                }
            }
        }
        Ok(module)
    }

    /// The zero module.
    pub fn zero(g: &PcGroup) -> Self {
        GModule {
            p: g.prime(),
            dim: 0,
            actions: vec![FpMatrix::zero(g.prime(), 0, 0); g.rank()],
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    /// `ρ(g_1^{e_1} ⋯ g_n^{e_n})`.
    fn word(&self, exps: &[u32]) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p, self.dim);
        for (m, &e) in self.actions.iter().zip(exps) {
            if e != 0 {
                acc = acc.mul(&m.pow(e as u64));
            }
        }
        acc
    }

    pub fn action_of(&self, x: &GroupElement) -> FpMatrix {
        self.word(x.exponents())
    }

    /// `ρ(x)` for every element, in normal-form order.
    pub fn all_actions(&self, g: &PcGroup) -> Vec<FpMatrix> {
        g.elements().map(|x| self.action_of(&x)).collect()
    }

    pub fn direct_sum(&self, other: &GModule) -> GModule {
        assert_eq!(self.actions.len(), other.actions.len(), "modules over different groups");
        GModule {
            p: self.p,
            dim: self.dim + other.dim,
            actions: self
                .actions
                .iter()
                .zip(&other.actions)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
            label: match (&self.label, &other.label) {
                (Some(a), Some(b)) => Some(format!("{a} + {b}")),
                _ => None,
            },
        }
    }

    /// `Σ_g ρ(g)`, the action of `T_G`.
    pub fn trace_operator(&self, g: &PcGroup) -> FpMatrix {
        self.all_actions(g)
            .into_iter()
            .fold(FpMatrix::zero(self.p, self.dim, self.dim), |acc, m| acc.add(&m))
    }

    /// `M^G`, the common kernel of `ρ(g_i) - 1`.
    pub fn fixed_points(&self) -> Submodule {
        let mut eqs = RowSpace::new(self.p, self.dim);
        for m in &self.actions {
            for i in 0..self.dim {
                let mut row = m.row(i);
                row.add_at(i, self.p - 1);
                eqs.insert(row);
            }
        }
        Submodule::from_vectors(self.p, self.dim, eqs.orthogonal_complement())
    }

    pub fn to_json(&self) -> GModuleJson {
        GModuleJson {
            p: self.p,
            dim: self.dim,
            actions: self.actions.iter().map(|m| m.to_json()).collect(),
        }
    }
}

/// `F_p[G]^λ` with the left regular action on each summand.
pub fn regular_module(g: &PcGroup, lambda: usize) -> GModule {
    let p = g.prime();
    let size = g.size();
    let one = (0..g.rank())
        .map(|i| {
            let gi = g.index_of(&g.generator(i));
            let mut m = FpMatrix::zero(p, size, size);
            for x in 0..size {
                m.set(g.mul_index(gi, x), x, 1);
            }
            m
        })
        .collect::<Vec<_>>();
    let mut out = GModule {
        p,
        dim: 0,
        actions: vec![FpMatrix::zero(p, 0, 0); g.rank()],
        label: None,
    };
    let summand = GModule {
        p,
        dim: size,
        actions: one,
        label: None,
    };
    for _ in 0..lambda {
        out = out.direct_sum(&summand);
    }
    out.label = Some(format!("F_{p}[G]^{lambda}"));
    out
}

/// `dim`-dimensional module with trivial action.
pub fn trivial_module(g: &PcGroup, dim: usize) -> GModule {
    GModule {
        p: g.prime(),
        dim,
        actions: vec![FpMatrix::identity(g.prime(), dim); g.rank()],
        label: Some(format!("trivial^{dim}")),
    }
}

/// The permutation module `F_p[G/N]` for a normal subgroup `N`.
pub fn permutation_module(g: &PcGroup, n: &Subgroup) -> Result<GModule> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let size = g.size();
    let mut label = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if label[x] == usize::MAX {
            for &h in n.element_indices() {
                label[g.mul_index(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    let p = g.prime();
    let actions = (0..g.rank())
        .map(|i| {
            let gi = g.index_of(&g.generator(i));
            let mut m = FpMatrix::zero(p, reps.len(), reps.len());
            for (c, &x) in reps.iter().enumerate() {
                m.set(label[g.mul_index(gi, x)], c, 1);
            }
            m
        })
        .collect();
    Ok(GModule::new(g, actions)?.with_label(format!("F_{p}[G/N], |N| = {}", n.order())))
}

/// A subspace of a module's ambient space (or of `F_p[G]`).
#[derive(Clone, Debug)]
pub struct Submodule {
    space: RowSpace,
}

impl Submodule {
    pub fn from_vectors(p: u32, ambient: usize, vectors: impl IntoIterator<Item = FpVec>) -> Self {
        let mut space = RowSpace::new(p, ambient);
        for v in vectors {
            space.insert(v);
        }
        Submodule { space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.cols()
    }

    pub fn basis(&self) -> Vec<FpVec> {
        self.space.basis()
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        self.space.contains(v)
    }

    pub fn same_space(&self, other: &Submodule) -> bool {
        self.space.same_space(&other.space)
    }

    pub fn is_closed_under(&self, actions: &[FpMatrix]) -> bool {
        let basis = self.space.basis();
        actions.iter().all(|m| basis.iter().all(|v| self.space.contains(&m.apply(v))))
    }
}

/// `Ann_G(x) = { α ∈ F_p[G] : α · x = 0 }`.
pub fn annihilator(g: &PcGroup, m: &GModule, x: &FpVec) -> Result<Submodule> {
    if x.len() != m.dim() {
        return Err(Error::Dimension(format!("vector of length {} in a module of dimension {}", x.len(), m.dim())));
    }
    // Columns ρ(g) x; the annihilator is the kernel of that matrix.
    let images: Vec<FpVec> = m.all_actions(g).iter().map(|r| r.apply(x)).collect();
    let mut eqs = RowSpace::new(g.prime(), g.size());
    for row in 0..m.dim() {
        let coords: Vec<u32> = images.iter().map(|v| v.get(row)).collect();
        eqs.insert(FpVec::from_slice(g.prime(), &coords));
    }
    Ok(Submodule::from_vectors(g.prime(), g.size(), eqs.orthogonal_complement()))
}

/// The tuple `(x_1, …, x_k)` as an element of `F_p[G]^k`.
pub fn stack(g: &PcGroup, parts: &[AlgebraVector]) -> FpVec {
    parts
        .iter()
        .map(|a| a.coeffs.clone())
        .reduce(|acc, v| acc.concat(&v))
        .unwrap_or_else(|| FpVec::zero(g.prime(), 0))
}

/// `λ = dim T_G(M)`.
pub fn free_rank(g: &PcGroup, m: &GModule) -> usize {
    if m.dim() == 0 {
        return 0;
    }
    m.trace_operator(g).rank()
}

/// Every basis vector `e_k` has a nonzero annihilator, i.e. the orbit
/// vectors `ρ(g) e_k` are linearly dependent.
pub fn is_torsion(g: &PcGroup, m: &GModule) -> bool {
    let actions = m.all_actions(g);
    (0..m.dim()).all(|k| {
        let mut span = RowSpace::new(m.prime(), m.dim());
        actions.iter().any(|r| !span.insert(r.column(k)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn regular_module_of_c2_is_the_swap() {
        let g = catalog("c2", 2).unwrap();
        let m = regular_module(&g, 1);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.actions()[0].to_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(regular_module(&g, 0).dim(), 0);
    }

    #[test]
    fn regular_module_satisfies_relations() {
        for (name, p) in [("c3", 3), ("q8", 2), ("heisenberg", 3)] {
            let g = catalog(name, p).unwrap();
            let m = regular_module(&g, 2);
            assert_eq!(m.dim(), 2 * g.size());
            assert!(GModule::new(&g, m.actions().to_vec()).is_ok(), "{name}");
        }
    }

    #[test]
    fn wrong_relations_rejected() {
        let g = catalog("c4", 2).unwrap();
        // g1 acting as the swap has order 2, but g1^2 = g2 must act as the
        // identity too: consistent. Make g2 act nontrivially instead.
        let swap = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let id = FpMatrix::identity(2, 2);
        assert!(GModule::new(&g, vec![swap.clone(), id.clone()]).is_ok());
        assert!(matches!(GModule::new(&g, vec![id, swap]), Err(Error::RelationViolated(_))));
    }

    #[test]
    fn trace_is_invariant() {
        let g = catalog("d8", 2).unwrap();
        let t = trace_element(&g);
        for x in g.elements() {
            assert_eq!(AlgebraVector::group_element(&g, &x).mul(&g, &t), t);
        }
        assert_eq!(trace_element(&PcGroup::trivial(2).unwrap()).coeffs().to_vec(), vec![1]);
    }

    #[test]
    fn augmentation_ideal_dimension() {
        for (name, p, k) in [("c5", 5, 1), ("v4", 2, 2), ("q8", 2, 2)] {
            let g = catalog(name, p).unwrap();
            let xs = augmentation_generators(&g);
            assert_eq!(xs.len(), k);
            assert_eq!(left_ideal_dim(&g, &xs), g.size() - 1, "{name}");
        }
    }

    #[test]
    fn annihilator_of_cyclic_augmentation() {
        let g = catalog("c3", 3).unwrap();
        let m = regular_module(&g, 1);
        let x = &augmentation_generators(&g)[0];
        let ann = annihilator(&g, &m, x.coeffs()).unwrap();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(trace_element(&g).coeffs()));
        let zero = annihilator(&g, &m, &FpVec::zero(3, 3)).unwrap();
        assert_eq!(zero.dim(), 3);
        assert!(annihilator(&g, &m, &FpVec::zero(3, 4)).is_err());
    }

    #[test]
    fn free_rank_and_torsion() {
        let c2 = catalog("c2", 2).unwrap();
        let m = regular_module(&c2, 1).direct_sum(&trivial_module(&c2, 4));
        assert_eq!(free_rank(&c2, &m), 1);
        assert!(!is_torsion(&c2, &m));
        let q8 = catalog("q8", 2).unwrap();
        assert_eq!(free_rank(&q8, &regular_module(&q8, 3)), 3);
        assert_eq!(free_rank(&q8, &trivial_module(&q8, 1)), 0);
        assert!(is_torsion(&q8, &trivial_module(&q8, 3)));
    }

    #[test]
    fn fixed_points_of_regular_module() {
        let g = catalog("c9", 3).unwrap();
        let fp = regular_module(&g, 1).fixed_points();
        assert_eq!(fp.dim(), 1);
        assert!(fp.contains(trace_element(&g).coeffs()));
    }

    #[test]
    fn permutation_module_is_torsion() {
        let g = catalog("d8", 2).unwrap();
        let n = Subgroup::generated_by(&g, &[g.generator(1)]);
        let m = permutation_module(&g, &n).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(is_torsion(&g, &m));
        assert_eq!(free_rank(&g, &m), 0);
    }
}
