mod common;

use proptest::prelude::*;

use pgv_core::catalog::Catalog;
use pgv_core::predicates::{hughes_subgroup, is_isolated, verify_isolation_witness, GroupAnalysis};
use pgv_core::GroupTable;

fn entries() -> &'static [pgv_core::catalog::CatalogEntry] {
    Catalog::builtin().unwrap().entries()
}

/// A catalog group (order ≤ 125 to keep cases cheap) and a handful of elements.
fn group_and_elems() -> impl Strategy<Value = (usize, Vec<usize>)> {
    let small: Vec<usize> = (0..entries().len()).filter(|&i| entries()[i].order() <= 125).collect();
    prop::sample::select(small).prop_flat_map(|i| {
        let n = entries()[i].order();
        (Just(i), prop::collection::vec(0..n, 1..4))
    })
}

fn table(i: usize) -> &'static GroupTable {
    &entries()[i].table
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_naive((i, gens) in group_and_elems()) {
        let g = table(i);
        let h = g.closure(&gens).unwrap();
        prop_assert_eq!(h.to_vec(), common::generated(g, &gens));
        let again = g.closure(&h.to_vec()).unwrap();
        prop_assert_eq!(again.to_vec(), h.to_vec());
    }

    #[test]
    fn lagrange((i, gens) in group_and_elems()) {
        let g = table(i);
        let h = g.closure(&gens).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in &gens {
            prop_assert_eq!(h.order() % g.order_of(x), 0);
        }
    }

    #[test]
    fn power_laws((i, xs) in group_and_elems(), a in -7i64..7, b in -7i64..7) {
        let g = table(i);
        let x = xs[0];
        prop_assert_eq!(g.mul(g.pow(x, a), g.pow(x, b)), g.pow(x, a + b));
        prop_assert_eq!(g.pow(g.pow(x, a), b), g.pow(x, a * b));
        prop_assert_eq!(g.pow(x, g.order_of(x) as i64), 0);
        prop_assert_eq!(g.inv(x), g.pow(x, -1));
    }

    #[test]
    fn commutator_identities((i, xs) in group_and_elems()) {
        let g = table(i);
        let (x, y) = (xs[0], *xs.last().unwrap());
        // [x, y]^{-1} = [y, x] and xy = yx[x, y]
        prop_assert_eq!(g.inv(g.commutator(x, y)), g.commutator(y, x));
        prop_assert_eq!(g.mul(x, y), g.mul(g.mul(y, x), g.commutator(x, y)));
        prop_assert_eq!(g.conjugate(x, y), g.mul(x, g.commutator(x, y)));
    }

    #[test]
    fn isolation_witnesses_reverify((i, gens) in group_and_elems()) {
        let g = table(i);
        let h = g.closure(&gens).unwrap();
        let whole = g.whole();
        match is_isolated(&h, &whole).unwrap().witness() {
            Some(x) => prop_assert!(verify_isolation_witness(&h, &whole, x)),
            None => {
                for x in (0..g.order()).filter(|&x| !h.contains(x)) {
                    prop_assert!(!verify_isolation_witness(&h, &whole, x));
                }
            }
        }
    }
}

#[test]
fn frattini_is_derived_times_agemo() {
    for e in entries() {
        let whole = e.table.whole();
        let phi = whole.frattini().unwrap();
        assert_eq!(phi.to_vec(), whole.frattini_pgroup().unwrap().to_vec(), "{}", e.id);
        let maximal = whole.maximal_subgroups().unwrap();
        let meet = maximal.iter().fold(whole.clone(), |acc, m| acc.intersection(m).unwrap());
        assert_eq!(phi.to_vec(), meet.to_vec(), "{}", e.id);
        let rank = whole.rank().unwrap();
        assert_eq!(phi.order() * e.prime().unwrap().pow(rank) as usize, e.order(), "{}", e.id);
    }
}

#[test]
fn minimal_nonabelian_structure() {
    for e in entries().iter().filter(|e| e.order() <= 81) {
        let analysis = GroupAnalysis::new(&e.table);
        let p = e.prime().unwrap() as usize;
        for h in analysis.minimal_nonabelian().unwrap() {
            let z = h.center();
            assert_eq!(h.frattini().unwrap().to_vec(), z.to_vec(), "{}", e.id);
            assert_eq!(h.order(), z.order() * p * p, "{}", e.id);
            assert_eq!(h.derived_subgroup().order(), p, "{}", e.id);
            assert_eq!(h.rank().unwrap(), 2, "{}", e.id);
        }
    }
}

#[test]
fn regularity_agrees_with_single_power_variant() {
    // the library tests (ab)^p ∈ a^p b^p ℧₁(⟨a,b⟩'); the oracle asks for a
    // single p-th power; the two agree on every catalog group
    for e in entries() {
        let ours = e.table.whole().is_regular_pgroup().unwrap();
        let oracle = common::regular_single_power(&e.table).is_none();
        assert_eq!(ours, oracle, "{}", e.id);
    }
}

#[test]
fn hughes_subgroup_contains_large_orders() {
    for e in entries().iter().filter(|e| e.order() <= 81) {
        let g = &e.table;
        let p = e.prime().unwrap() as usize;
        let h = hughes_subgroup(&g.whole()).unwrap();
        let big: Vec<usize> = (0..g.order()).filter(|&x| g.order_of(x) > p).collect();
        assert_eq!(h.to_vec(), common::generated(g, &big), "{}", e.id);
    }
}
