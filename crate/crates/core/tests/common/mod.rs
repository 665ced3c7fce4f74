//! Brute-force oracles shared by the integration tests. They use only the
//! raw multiplication table, never the library's own subgroup machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pgv_core::presentation::semidirect_product;
use pgv_core::GroupTable;

/// Every subset of `G` closed under multiplication (hence a subgroup, since
/// `G` is finite), found by deciding membership element by element and
/// pruning as soon as two chosen elements multiply to a rejected one.
pub fn closed_subsets(g: &GroupTable) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut state = vec![None::<bool>; n];
    state[0] = Some(true);
    let mut out = BTreeSet::new();
    decide(g, 1, &mut state, &mut out);
    out
}

fn decide(g: &GroupTable, k: usize, state: &mut Vec<Option<bool>>, out: &mut BTreeSet<Vec<usize>>) {
    let n = g.order();
    if k == n {
        out.insert((0..n).filter(|&i| state[i] == Some(true)).collect());
        return;
    }
    for choice in [false, true] {
        state[k] = Some(choice);
        if consistent(g, k, state) {
            decide(g, k + 1, state, out);
        }
    }
    state[k] = None;
}

/// No product of two chosen elements among `0..=k` is a rejected element.
fn consistent(g: &GroupTable, k: usize, state: &[Option<bool>]) -> bool {
    let chosen: Vec<usize> = (0..=k).filter(|&i| state[i] == Some(true)).collect();
    let newly_in = state[k] == Some(true);
    for &a in &chosen {
        for &b in &chosen {
            if newly_in && a != k && b != k {
                continue;
            }
            if state[g.mul(a, b)] == Some(false) {
                return false;
            }
        }
    }
    if !newly_in {
        // k was rejected: no earlier pair may produce it
        for &a in &chosen {
            for &b in &chosen {
                if g.mul(a, b) == k {
                    return false;
                }
            }
        }
    }
    true
}

/// `S(p³)` as `(C_p × C_p) ⋊ C_p` with `(x, y) ↦ (x + y, y)`.
pub fn canonical_s_p3(p: usize) -> GroupTable {
    let c = GroupTable::cyclic(p).unwrap();
    let base = GroupTable::direct_product(&c, &c).unwrap();
    let alpha: Vec<usize> = (0..p * p)
        .map(|i| {
            let (x, y) = (i / p, i % p);
            ((x + y) % p) * p + y
        })
        .collect();
    semidirect_product(&base, &alpha, p as u32).unwrap()
}

/// Whether `(ab)^p ≡ a^p b^p` modulo a *single* p-th power of an element of
/// `⟨a, b⟩'`, for all `a, b` — the stricter reading of regularity.
pub fn regular_single_power(g: &GroupTable) -> Option<(usize, usize)> {
    let n = g.order();
    let p = g.prime().unwrap() as i64;
    for a in 0..n {
        for b in 0..n {
            let lhs = g.pow(g.mul(a, b), p);
            let apbp = g.mul(g.pow(a, p), g.pow(b, p));
            let d = g.mul(g.inv(apbp), lhs);
            if d == 0 {
                continue;
            }
            let k = generated(g, &[a, b]);
            let comms: Vec<usize> = k
                .iter()
                .flat_map(|&x| k.iter().map(move |&y| (x, y)))
                .map(|(x, y)| g.commutator(x, y))
                .collect();
            let derived = generated(g, &comms);
            if !derived.iter().any(|&c| g.pow(c, p) == d) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Naive closure by repeated products.
pub fn generated(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    set.extend(gens.iter().copied());
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &a in &cur {
            for &b in &cur {
                set.insert(g.mul(a, b));
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

/// Removes timing fields from a JSON report.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_ms");
            m.remove("wall_ms");
            for (_, x) in m.iter_mut() {
                strip_timing(x);
            }
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
