use proptest::prelude::*;

use tower_forge::cohomology::Cocycle2;
use tower_forge::fpg_module::AlgebraVector;
use tower_forge::linalg::{FpMatrix, FpVec};
use tower_forge::pgroup::catalog;
use tower_forge::planner::growth_inequality_check;
use tower_forge::quadratic::{reduced_forms, Discriminant};
use tower_forge::PcGroup;

const GROUPS: [(&str, u32); 8] = [
    ("c8", 2),
    ("d8", 2),
    ("q8", 2),
    ("c4xc2", 2),
    ("heisenberg", 3),
    ("m27", 3),
    ("c9xc3", 3),
    ("c5xc5", 5),
];

fn group(i: usize) -> PcGroup {
    let (name, p) = GROUPS[i % GROUPS.len()];
    catalog(name, p).unwrap()
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(prop::collection::vec(0..p, cols), rows)
        .prop_map(move |r| FpMatrix::from_rows(p, &r).unwrap())
}

/// Kronecker symbol `(d / n)` for odd `n > 0`, via Jacobi reciprocity.
fn jacobi(mut a: i64, mut n: i64) -> i64 {
    a = a.rem_euclid(n);
    let mut s = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        a %= n;
    }
    if n == 1 {
        s
    } else {
        0
    }
}

fn kronecker(d: i64, n: i64) -> i64 {
    let mut n = n;
    let mut s = 1;
    while n % 2 == 0 {
        n /= 2;
        s *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    s * jacobi(d, n)
}

/// Class number of `D < -4` from the analytic class number formula.
fn dirichlet_class_number(d: i64) -> i64 {
    let m = -d;
    let sum: i64 = (1..m).map(|a| kronecker(d, a) * a).sum();
    -sum / m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law(gi in 0usize..8, a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let g = group(gi);
        let (a, b, c) = (g.element_at(a % g.size()), g.element_at(b % g.size()), g.element_at(c % g.size()));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert_eq!(g.mul(&a, &g.inverse(&a)), g.identity());
        prop_assert_eq!(g.conjugate(&a, &b), g.mul(&g.inverse(&b), &g.mul(&a, &b)));
        prop_assert_eq!(g.index_of(&g.element_at(g.index_of(&a))), g.index_of(&a));
    }

    #[test]
    fn rank_nullity(m in matrix(3, 5, 7)) {
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn matrix_product_is_associative(a in matrix(5, 3, 4), b in matrix(5, 4, 2), c in matrix(5, 2, 3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn group_algebra_is_associative(gi in 0usize..8, seed in prop::collection::vec(0u32..5, 3 * 27)) {
        let g = group(gi);
        let n = g.size();
        let p = g.prime();
        let v = |k: usize| {
            let coords: Vec<u32> = (0..n).map(|i| seed[(k * n + i) % seed.len()] % p).collect();
            AlgebraVector::from_coeffs(&g, FpVec::from_slice(p, &coords)).unwrap()
        };
        let (x, y, z) = (v(0), v(1), v(2));
        prop_assert_eq!(x.mul(&g, &y).mul(&g, &z), x.mul(&g, &y.mul(&g, &z)));
    }

    #[test]
    fn coboundaries_are_split_cocycles(gi in 0usize..8, raw in prop::collection::vec(0u32..5, 27)) {
        let g = group(gi);
        let mut c: Vec<u32> = (0..g.size()).map(|i| raw[i % raw.len()] % g.prime()).collect();
        c[0] = 0;
        let f = Cocycle2::coboundary(&g, &c);
        prop_assert!(f.satisfies_cocycle_identity(&g));
        let ext = tower_forge::cohomology::ExtensionClass::new(g.clone(), f).unwrap();
        prop_assert!(ext.is_split());
    }

    #[test]
    fn growth_holds_off_grid(p in prop::sample::select(vec![2u32, 3, 5, 7, 11]), r1 in 0u64..300, r2 in 0u64..300,
                             h1 in 0usize..30, h2 in 0usize..30, mu in any::<bool>()) {
        prop_assume!(r1 + r2 > 0);
        prop_assert!(growth_inequality_check(p, r1, r2, h1, h2, mu));
    }

    #[test]
    fn class_number_matches_analytic_formula(d in 5i64..3000) {
        if let Ok(disc) = Discriminant::new(-d) {
            let data = reduced_forms(&disc).unwrap();
            prop_assert_eq!(data.h as i64, dirichlet_class_number(-d));
        }
    }
}
