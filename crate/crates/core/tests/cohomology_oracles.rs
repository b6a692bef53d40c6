use tower_forge::cohomology::{all_classes, extension_basis, h2_bruteforce, h2_fast, Cocycle2, ExtensionClass};
use tower_forge::pgroup::{catalog, catalog_universe, quotient, Subgroup};

#[test]
fn fast_h2_matches_bruteforce_on_catalog() {
    for (p, max) in [(2, 64), (3, 81), (5, 25), (7, 49)] {
        for e in catalog_universe(p, max) {
            let fast = h2_fast(&e.group);
            let brute = h2_bruteforce(&e.group).unwrap();
            assert_eq!(fast, brute, "{} (p={p})", e.name);
        }
    }
}

#[test]
fn total_groups_erase_to_base() {
    for e in catalog_universe(2, 16).into_iter().chain(catalog_universe(3, 27)) {
        let g = &e.group;
        let basis = extension_basis(g).unwrap();
        for (_, ext) in all_classes(&basis).take(16) {
            let t = ext.total_group();
            assert!(t.consistency_check().passed(), "{}", e.name);
            assert_eq!(t.order(), g.order() * g.prime() as u64);
            let n = g.rank();
            for i in 0..n {
                assert_eq!(&t.power_relation(i)[..n], g.power_relation(i));
                for j in 0..i {
                    assert_eq!(&t.commutator_relation(i, j)[..n], g.commutator_relation(i, j));
                }
            }
            let z = Subgroup::generated_by(&t, &[t.generator(n)]);
            assert!(z.is_central(&t));
            assert_eq!(&quotient(&t, &z).unwrap(), g);
        }
    }
}

#[test]
fn splitting_depends_only_on_the_class() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (name, p) in [("d8", 2), ("q8", 2), ("c4xc2", 2), ("heisenberg", 3), ("c9", 3)] {
        let g = catalog(name, p).unwrap();
        let basis = extension_basis(&g).unwrap();
        for (idx, ext) in all_classes(&basis) {
            for _ in 0..3 {
                let c: Vec<u32> = (0..g.size()).map(|i| if i == 0 { 0 } else { rng.gen_range(0..p) }).collect();
                let shifted = ext.cocycle.add(&Cocycle2::coboundary(&g, &c));
                assert!(shifted.satisfies_cocycle_identity(&g));
                let moved = ExtensionClass::new(g.clone(), shifted).unwrap();
                assert_eq!(moved.is_split(), idx == 0, "{name} class {idx}");
            }
        }
    }
}
