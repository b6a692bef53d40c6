//! Verification suites over the catalog test universe.
//!
//! Each suite is deterministic: reports contain no timings and every list is
//! produced in a fixed order, so two runs serialize to identical bytes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{h2_bruteforce, h2_fast, verify_h_bounds_with, SweepPolicy};
use crate::fpg_module::{
    annihilator, augmentation_generators, augmentation_generators_from, free_rank, is_torsion, permutation_module,
    regular_module, stack, trace_element, trivial_module, Submodule,
};
use crate::pgroup::{catalog_universe, center, CatalogEntry, PcGroup};
use crate::planner::{growth_inequality_check, plan_with, theorem_bounds, ChainSelector, FieldDescriptor, PlanMode, StepKind};
use crate::quadratic::{
    fact24_instance, h1_check, is_prime, negative_fundamental_discriminants, reduced_forms, TameSetQ,
};

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(id: u8, name: &'static str, checked: usize, mut failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        failures.truncate(MAX_LISTED_FAILURES);
        SuiteReport {
            id,
            name,
            passed,
            checked,
            failures,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

pub const SUITE_NAMES: [&str; 9] = [
    "annihilator_of_augmentation_tuple",
    "free_rank_of_regular_plus_torsion",
    "h2_fast_matches_bruteforce",
    "extension_h_bounds",
    "planner_bound_reproduction",
    "growth_inequality_grid",
    "h1_formula_over_q",
    "genus_and_unique_extensions",
    "determinism",
];

fn universe(p: u32, max_order: u64) -> Vec<CatalogEntry> {
    catalog_universe(p, max_order)
}

fn small_universe(max_order: u64) -> Vec<CatalogEntry> {
    let mut all = universe(2, max_order);
    all.extend(universe(3, max_order));
    all
}

fn label(e: &CatalogEntry) -> String {
    format!("{} (p={})", e.name, e.group.prime())
}

fn trace_span(g: &PcGroup) -> Submodule {
    Submodule::from_vectors(g.prime(), g.size(), [trace_element(g).coeffs().clone()])
}

/// `Ann(x_1, …, x_{h1}) = F_p T_G` in `F_p[G]^{h1}`, for two generating sets.
pub fn suite_annihilator() -> SuiteReport {
    let groups = small_universe(27);
    let failures: Vec<String> = groups
        .par_iter()
        .flat_map_iter(|e| {
            let g = &e.group;
            let m = regular_module(g, g.h1());
            let expected = trace_span(g);
            let reversed: Vec<_> = (0..g.size()).rev().map(|i| g.element_at(i)).collect();
            let second = g.minimal_generating_set_from(reversed);
            let mut out = Vec::new();
            for (which, xs) in [
                ("first", augmentation_generators(g)),
                ("second", augmentation_generators_from(g, &second)),
            ] {
                match annihilator(g, &m, &stack(g, &xs)) {
                    Ok(ann) if ann.same_space(&expected) => {}
                    Ok(ann) => out.push(format!("{}: {which} generating set gives annihilator of dim {}", label(e), ann.dim())),
                    Err(err) => out.push(format!("{}: {err}", label(e))),
                }
            }
            out
        })
        .collect();
    SuiteReport::new(1, SUITE_NAMES[0], groups.len(), failures)
}

/// A torsion module for `G`: trivial summands plus `F_p[G / Z(G)]`.
pub fn torsion_module(g: &PcGroup) -> crate::fpg_module::GModule {
    if g.is_trivial() {
        return trivial_module(g, 0);
    }
    let z = center(g);
    let perm = permutation_module(g, &z).expect("the centre is normal");
    trivial_module(g, 2).direct_sum(&perm)
}

/// `free_rank(F_p[G]^λ ⊕ T) = λ` for `λ <= 3`.
pub fn suite_free_rank() -> SuiteReport {
    let groups = small_universe(27);
    let failures: Vec<String> = groups
        .par_iter()
        .flat_map_iter(|e| {
            let g = &e.group;
            let t = torsion_module(g);
            let mut out = Vec::new();
            if !is_torsion(g, &t) || free_rank(g, &t) != 0 {
                out.push(format!("{}: constructed torsion module is not torsion", label(e)));
            }
            for lambda in 0..=3 {
                let m = regular_module(g, lambda).direct_sum(&t);
                let r = free_rank(g, &m);
                if r != lambda {
                    out.push(format!("{}: lambda {lambda} gave free rank {r}", label(e)));
                }
                if is_torsion(g, &m) != (r == 0) {
                    out.push(format!("{}: torsion flag disagrees with free rank at lambda {lambda}", label(e)));
                }
            }
            out
        })
        .collect();
    SuiteReport::new(2, SUITE_NAMES[1], groups.len() * 4, failures)
}

pub fn suite_h2() -> SuiteReport {
    let mut groups = universe(2, 64);
    groups.extend(universe(3, 81));
    let mut failures: Vec<String> = groups
        .par_iter()
        .filter_map(|e| {
            let fast = h2_fast(&e.group);
            match h2_bruteforce(&e.group) {
                Ok(b) if b == fast => None,
                Ok(b) => Some(format!("{}: fast {fast}, brute force {b}", label(e))),
                Err(err) => Some(format!("{}: {err}", label(e))),
            }
        })
        .collect();
    for p in [2u32, 3] {
        let cp = crate::pgroup::catalog(&format!("c{p}"), p).expect("cyclic group");
        if h2_fast(&cp) != 1 || h2_bruteforce(&cp).ok() != Some(1) {
            failures.push(format!("h2(Z/{p}) != 1"));
        }
    }
    SuiteReport::new(3, SUITE_NAMES[2], groups.len(), failures)
}

pub fn suite_bounds() -> SuiteReport {
    let groups = small_universe(32);
    let policy = SweepPolicy::Exhaustive {
        limit: usize::MAX,
        samples: 0,
        seed: 0,
    };
    let mut checked = 0;
    let mut failures = Vec::new();
    for e in &groups {
        match verify_h_bounds_with(&e.group, 32, policy) {
            Ok(rep) => {
                checked += rep.classes_checked;
                for bad in rep.entries.iter().filter(|b| !b.bound_ok) {
                    failures.push(format!(
                        "{} class {}: h1' = {}, h2' = {} (h1 = {}, h2 = {}, split = {})",
                        label(e),
                        bad.class_index,
                        bad.h1,
                        bad.h2,
                        rep.h1,
                        rep.h2,
                        bad.split
                    ));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", label(e))),
        }
    }
    SuiteReport::new(4, SUITE_NAMES[3], checked, failures)
}

fn planner_fields(p: u32) -> Vec<FieldDescriptor> {
    if p == 2 {
        vec![FieldDescriptor::new(1, 0, true)]
    } else {
        vec![FieldDescriptor::new(1, 0, false), FieldDescriptor::new(0, 1, true)]
    }
}

pub fn suite_planner() -> SuiteReport {
    let mut cases = Vec::new();
    for p in [2u32, 3] {
        for e in universe(p, (p as u64).pow(5)) {
            for k0 in planner_fields(p) {
                cases.push((e.clone(), k0));
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|(e, k0)| {
            let g = &e.group;
            let tag = format!("{} mu_p={}", label(e), k0.mu_p);
            let mut out = Vec::new();
            let run = |mode, sel| plan_with(g, *k0, mode, sel);
            let paper = match run(PlanMode::PaperCounting, ChainSelector::First) {
                Ok(c) => c,
                Err(err) => return vec![format!("{tag}: {err}")],
            };
            if !paper.ok {
                out.push(format!("{tag}: {}", paper.violations.join("; ")));
            }
            if !g.is_trivial() {
                let (deg, primes) = theorem_bounds(g.prime(), g.rank() as u32, k0.mu_p);
                if (paper.total_degree, paper.total_primes) != (deg, primes) {
                    out.push(format!(
                        "{tag}: totals ({}, {}) differ from ({deg}, {primes})",
                        paper.total_degree, paper.total_primes
                    ));
                }
                match paper.steps.get(2) {
                    Some(s) if s.kind == StepKind::BaseCaseDiag && s.f_after > 5 => {}
                    _ => out.push(format!("{tag}: base case does not end with f > 5")),
                }
            }
            match run(PlanMode::Refined, ChainSelector::First) {
                Ok(r) => {
                    if !r.ok || r.total_degree > paper.total_degree || r.total_primes > paper.total_primes {
                        out.push(format!("{tag}: refined plan exceeds paper counting"));
                    }
                    if !k0.mu_p && (r.total_degree, r.total_primes) != (paper.total_degree, paper.total_primes) {
                        out.push(format!("{tag}: refined differs without mu_p"));
                    }
                }
                Err(err) => out.push(format!("{tag}: refined: {err}")),
            }
            match run(PlanMode::PaperCounting, ChainSelector::Last) {
                Ok(o) if o.ok && (o.total_degree, o.total_primes) == (paper.total_degree, paper.total_primes) => {}
                Ok(_) => out.push(format!("{tag}: second chief chain gives different totals")),
                Err(err) => out.push(format!("{tag}: second chain: {err}")),
            }
            let again = serde_json::to_string(&run(PlanMode::PaperCounting, ChainSelector::First).ok());
            if again.ok() != serde_json::to_string(&Some(&paper)).ok() {
                out.push(format!("{tag}: certificate is not reproducible"));
            }
            out
        })
        .collect();
    SuiteReport::new(5, SUITE_NAMES[4], cases.len(), failures)
}

pub fn suite_growth() -> SuiteReport {
    let mut points = Vec::new();
    for p in [2u32, 3, 5] {
        for total in 1..=64u64 {
            for r1 in 0..=total {
                points.push((p, r1, total - r1));
            }
        }
    }
    let failures: Vec<String> = points
        .par_iter()
        .flat_map_iter(|&(p, r1, r2)| {
            let mut out = Vec::new();
            for h1 in 0..=8 {
                for h2 in 0..=8 {
                    for mu_p in [false, true] {
                        if !growth_inequality_check(p, r1, r2, h1, h2, mu_p) {
                            out.push(format!("p={p} r1={r1} r2={r2} h1={h1} h2={h2} mu_p={mu_p}"));
                        }
                    }
                }
            }
            out
        })
        .collect();
    SuiteReport::new(6, SUITE_NAMES[5], points.len() * 81 * 2, failures)
}

fn odd_primes_below(n: u64) -> Vec<u64> {
    (3..n).filter(|&q| is_prime(q)).collect()
}

/// The sets used by the h1-formula suite: all `|S| <= 2` from odd primes
/// below 100, then 200 seeded random sets of size at most 4.
pub fn h1_test_sets() -> Vec<TameSetQ> {
    let small = odd_primes_below(100);
    let mut sets = vec![TameSetQ::new([]).expect("empty set")];
    for (i, &a) in small.iter().enumerate() {
        sets.push(TameSetQ::new([a]).expect("prime"));
        for &b in &small[i + 1..] {
            sets.push(TameSetQ::new([a, b]).expect("primes"));
        }
    }
    let pool = odd_primes_below(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let pick: Vec<u64> = pool.choose_multiple(&mut rng, k).copied().collect();
        sets.push(TameSetQ::new(pick).expect("primes"));
    }
    sets
}

pub fn suite_h1_formula() -> SuiteReport {
    let sets = h1_test_sets();
    let failures: Vec<String> = sets
        .par_iter()
        .filter_map(|s| {
            let rep = h1_check(s);
            (!rep.ok()).then(|| {
                format!(
                    "S = {:?}: formula {}, kummer {} ({} fields)",
                    rep.s,
                    rep.h1_formula,
                    rep.kummer_dim,
                    rep.fields.len()
                )
            })
        })
        .collect();
    SuiteReport::new(7, SUITE_NAMES[6], sets.len(), failures)
}

pub fn suite_genus() -> SuiteReport {
    let discs = negative_fundamental_discriminants(-10_000);
    let mut failures: Vec<String> = discs
        .par_iter()
        .filter_map(|d| match reduced_forms(d) {
            Ok(f) if f.two_rank != f.genus_rank => Some(format!("D = {}: two_rank {} vs t - 1 = {}", d.value, f.two_rank, f.genus_rank)),
            Ok(f) if d.t() == 1 && f.h % 2 == 0 => Some(format!("D = {}: t = 1 but h = {} is even", d.value, f.h)),
            Ok(_) => None,
            Err(err) => Some(err.to_string()),
        })
        .collect();
    let qs = odd_primes_below(500);
    for &q in &qs {
        match fact24_instance(q) {
            Ok(r) if r.ok => {}
            Ok(r) => failures.push(format!("q = {q}: {r:?}")),
            Err(err) => failures.push(format!("q = {q}: {err}")),
        }
    }
    SuiteReport::new(8, SUITE_NAMES[7], discs.len() + qs.len(), failures)
}

/// Re-runs the cheaper suites and compares serialized output byte for byte.
/// (The full two-run comparison of `verify --all` lives in the acceptance
/// tests.)
pub fn suite_determinism() -> SuiteReport {
    let run = || {
        let suites = [suite_annihilator(), suite_free_rank(), suite_h1_formula()];
        serde_json::to_string(&suites).expect("reports serialize")
    };
    let failures = if run() == run() {
        Vec::new()
    } else {
        vec!["repeated runs serialized differently".to_string()]
    };
    SuiteReport::new(9, SUITE_NAMES[8], 2, failures)
}

pub fn run_suite(id: u8) -> Option<SuiteReport> {
    Some(match id {
        1 => suite_annihilator(),
        2 => suite_free_rank(),
        3 => suite_h2(),
        4 => suite_bounds(),
        5 => suite_planner(),
        6 => suite_growth(),
        7 => suite_h1_formula(),
        8 => suite_genus(),
        9 => suite_determinism(),
        _ => return None,
    })
}

pub fn run_suites(ids: &[u8]) -> VerifyReport {
    let mut suites: Vec<SuiteReport> = ids.iter().filter_map(|&id| run_suite(id)).collect();
    suites.sort_by_key(|s| s.id);
    VerifyReport {
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

pub fn run_all() -> VerifyReport {
    run_suites(&[1, 2, 3, 4, 5, 6, 7, 8, 9])
}
