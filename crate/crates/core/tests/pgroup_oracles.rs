//! Brute-force oracles for the pc-group layer: everything here is recomputed
//! from the multiplication table alone.

use tower_forge::pgroup::{catalog_universe, center, quotient, CatalogEntry, Subgroup};
use tower_forge::{GroupElement, PcGroup};

fn groups() -> Vec<CatalogEntry> {
    let mut all = catalog_universe(2, 32);
    all.extend(catalog_universe(3, 27));
    all.extend(catalog_universe(5, 25));
    all
}

fn table(g: &PcGroup) -> Vec<Vec<usize>> {
    (0..g.size()).map(|a| (0..g.size()).map(|b| g.mul_index(a, b)).collect()).collect()
}

fn log_p(p: u32, mut n: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p as usize, 0);
        n /= p as usize;
        k += 1;
    }
    k
}

#[test]
fn multiplication_is_a_group_law() {
    for e in groups().iter().filter(|e| e.group.size() <= 27) {
        let g = &e.group;
        let t = table(g);
        let n = g.size();
        for a in 0..n {
            assert_eq!(t[0][a], a);
            assert_eq!(t[a][0], a);
            assert_eq!(t[a].iter().filter(|&&x| x == 0).count(), 1, "{}: inverse", e.name);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(t[t[a][b]][c], t[a][t[b][c]], "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn h1_matches_frattini_quotient() {
    for e in groups() {
        let g = &e.group;
        let p = g.prime() as u64;
        let elems: Vec<GroupElement> = g.elements().collect();
        let mut gens: Vec<GroupElement> = elems.iter().map(|x| g.pow(x, p)).collect();
        for x in &elems {
            for y in &elems {
                gens.push(g.commutator(x, y));
            }
        }
        let phi = Subgroup::generated_by(g, &gens);
        let expected = log_p(g.prime(), g.size() / phi.order());
        assert_eq!(g.h1(), expected, "{}", e.name);

        let mgs = g.minimal_generating_set();
        assert_eq!(mgs.len(), expected, "{}", e.name);
        assert_eq!(Subgroup::generated_by(g, &mgs).order(), g.size(), "{}", e.name);
    }
}

#[test]
fn normal_subgroups_of_order_p_are_central() {
    for e in groups() {
        let g = &e.group;
        for x in g.elements().filter(|x| g.element_order(x) == g.prime() as u64) {
            let n = Subgroup::generated_by(g, std::slice::from_ref(&x));
            if n.is_normal(g) {
                assert!(n.is_central(g), "{}", e.name);
            }
        }
    }
}

#[test]
fn center_is_nontrivial_and_quotients_have_the_right_order() {
    for e in groups().into_iter().filter(|e| !e.group.is_trivial()) {
        let g = &e.group;
        let z = center(g);
        assert!(z.order() > 1, "{}", e.name);
        let naive = g
            .elements()
            .filter(|x| g.elements().all(|y| g.mul(x, &y) == g.mul(&y, x)))
            .count();
        assert_eq!(z.order(), naive, "{}", e.name);
        let q = quotient(g, &z).unwrap();
        assert_eq!(q.size() * z.order(), g.size(), "{}", e.name);
        assert!(q.consistency_check().passed());
    }
}

#[test]
fn text_format_round_trips() {
    for e in groups() {
        let text = e.group.to_text();
        assert_eq!(PcGroup::parse(&text).unwrap(), e.group, "{}", e.name);
    }
}

#[test]
fn element_orders_and_exponent() {
    for e in groups() {
        let g = &e.group;
        let max = g.elements().map(|x| g.element_order(&x)).max().unwrap_or(1);
        assert_eq!(g.exponent(), max, "{}", e.name);
        for x in g.elements() {
            let o = g.element_order(&x);
            assert!(g.pow(&x, o).is_identity());
            assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        }
    }
}
