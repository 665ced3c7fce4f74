mod common;

use pgv_core::catalog::{
    are_isomorphic, compute_tags, fingerprint, verify_isomorphism, Catalog, Filter, Tag,
};
use pgv_core::presentation::{build_from_presentation, parse_pcp, semidirect_product};
use pgv_core::GroupTable;

fn catalog() -> &'static Catalog {
    Catalog::builtin().unwrap()
}

#[test]
fn abelian_groups_of_order_27() {
    let f = Filter { order: Some(27), tag: Some(Tag::Abelian), ..Filter::default() };
    let ids: Vec<&str> = catalog().list_entries(&f).iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["o27#C27", "o27#C3^3", "o27#C9xC3"]);
}

#[test]
fn filters_by_prime() {
    for (p, n) in [(2, 19), (3, 20), (5, 20)] {
        let f = Filter { prime: Some(p), ..Filter::default() };
        assert_eq!(catalog().list_entries(&f).len(), n, "p = {p}");
    }
}

#[test]
fn sp3_lookup() {
    let e = catalog().get("o27#SP3").unwrap();
    let fp = &e.fingerprint;
    assert_eq!((fp.order, fp.exponent, fp.center_order, fp.nilpotency_class), (27, 3, 3, 2));
    assert!(e.has_tag(Tag::ExpP) && e.has_tag(Tag::MinimalNonabelian) && e.has_tag(Tag::MaximalClass));
    assert!(catalog().get("o27#nope").is_err());
}

#[test]
fn quaternion_is_not_dihedral() {
    let q8 = catalog().get_group("o8#Q8").unwrap();
    let d8 = catalog().get_group("o8#D8").unwrap();
    assert_eq!(q8.order_histogram(), vec![(1, 1), (2, 1), (4, 6)]);
    assert_eq!(d8.order_histogram(), vec![(1, 1), (2, 5), (4, 2)]);
    assert!(are_isomorphic(q8, d8).unwrap().is_none());
}

#[test]
fn sp3_matches_semidirect_construction() {
    for (id, p) in [("o27#SP3", 3), ("o125#SP3", 5)] {
        let g = catalog().get_group(id).unwrap();
        let h = common::canonical_s_p3(p);
        let map = are_isomorphic(g, &h).unwrap().expect("isomorphic");
        verify_isomorphism(g, &h, &map).unwrap();
    }
}

#[test]
fn isomorphism_after_relabelling() {
    let g = catalog().get_group("o81#MC3").unwrap();
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    perm[1..].reverse();
    let h = g.relabel(&perm).unwrap();
    let map = are_isomorphic(g, &h).unwrap().expect("relabelled copy");
    verify_isomorphism(g, &h, &map).unwrap();
    assert!(are_isomorphic(&h, g).unwrap().is_some());
}

#[test]
fn semidirect_c9_by_c3_is_m27() {
    let c9 = GroupTable::cyclic(9).unwrap();
    // x ↦ x^4 has order 3 in Aut(C9)
    let alpha: Vec<usize> = (0..9).map(|x| 4 * x % 9).collect();
    let g = semidirect_product(&c9, &alpha, 3).unwrap();
    let m27 = catalog().get_group("o27#M27").unwrap();
    assert_eq!(fingerprint(&g).unwrap(), fingerprint(m27).unwrap());
    assert!(are_isomorphic(&g, m27).unwrap().is_some());
}

#[test]
fn stored_tags_match_recomputation() {
    for e in catalog().entries() {
        assert_eq!(compute_tags(&e.table).unwrap(), e.tags, "{}", e.id);
    }
}

#[test]
fn maximal_class_counts() {
    for (n, k) in [(8, 2), (16, 3), (27, 2), (81, 4), (125, 2), (625, 4)] {
        let f = Filter { order: Some(n), tag: Some(Tag::MaximalClass), ..Filter::default() };
        assert_eq!(catalog().list_entries(&f).len(), k, "order {n}");
    }
}

#[test]
fn lemma4_witness_search() {
    let w = catalog().find_lemma4_witnesses(3, 243).unwrap();
    let ids: Vec<&str> = w.iter().map(|w| w.entry.id.as_str()).collect();
    assert_eq!(ids, ["o81#MC2"]);
    assert_eq!((w[0].hughes.len(), w[0].hughes_index), (27, 3));
    assert!(w[0].hughes_abelian && w[0].complement.is_some());
    assert!(catalog().find_lemma4_witnesses(5, 125).unwrap().is_empty());
    assert!(catalog().find_lemma4_witnesses(5, 625).unwrap().is_empty());
}

#[test]
fn extended_sample_loads() {
    let cat = Catalog::load(Catalog::default_dir(), true).unwrap();
    assert_eq!(cat.len(), 63);
    let f = Filter { order: Some(243), ..Filter::default() };
    assert_eq!(cat.list_entries(&f).len(), 2);
}

#[test]
fn inconsistent_presentation_is_rejected() {
    // b^a = b*c with c central forces c^p = 1 only if c has order p; here
    // the tail a^p = b makes the relations collapse
    let text = "p=3; gens a,b,c; a^p = b; b^a = b*c;";
    let pres = parse_pcp(text).unwrap();
    let err = build_from_presentation(&pres).unwrap_err().to_string();
    assert!(err.contains("shortfall"), "{err}");
}

#[test]
fn presentation_text_round_trip() {
    for e in catalog().entries() {
        let Some(path) = e.path.as_ref().filter(|p| p.extension().is_some_and(|x| x == "pcp")) else {
            continue;
        };
        let text = std::fs::read_to_string(path).unwrap();
        let pres = parse_pcp(&text).unwrap();
        let again = parse_pcp(&pres.to_text()).unwrap();
        assert_eq!(pres.to_text(), again.to_text(), "{}", e.id);
        assert_eq!(pres.power_relations, again.power_relations, "{}", e.id);
        let g = build_from_presentation(&again).unwrap();
        assert_eq!(g.raw_table(), e.table.raw_table(), "{}", e.id);
    }
}
