use serde::Serialize;

use crate::algebra::GroupTable;
use crate::error::{Error, Result};

/// Isomorphism invariants of a finite p-group. Equal fingerprints are
/// necessary, not sufficient, for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub nilpotency_class: usize,
    /// Cyclic factor orders of `G/G'`, descending.
    pub abelianization: Vec<usize>,
    /// `(element order, count)`, ascending by order.
    pub order_histogram: Vec<(usize, usize)>,
    /// `(class size, number of classes)`, ascending by size.
    pub class_size_histogram: Vec<(usize, usize)>,
}

pub fn fingerprint(g: &GroupTable) -> Result<Fingerprint> {
    let whole = g.whole();
    let derived = whole.derived_subgroup();
    let abelianization = abelian_invariants(&whole.quotient(&derived)?)?;
    Ok(Fingerprint {
        order: g.order(),
        exponent: whole.exponent(),
        center_order: whole.center().order(),
        derived_order: derived.order(),
        nilpotency_class: whole.nilpotency_class()?,
        abelianization,
        order_histogram: g.order_histogram(),
        class_size_histogram: class_size_histogram(g),
    })
}

/// Cyclic factor orders (descending) of an abelian p-group, read off from
/// `|Ω_k| = |{x : x^{p^k} = 1}|`.
pub fn abelian_invariants(a: &GroupTable) -> Result<Vec<usize>> {
    if a.order() == 1 {
        return Ok(Vec::new());
    }
    if !a.is_abelian() {
        return Err(Error::MalformedTable("abelian invariants of a nonabelian group".into()));
    }
    let p = a.require_prime()? as usize;
    // log_p |Ω_k| for k = 0, 1, ...
    let mut omega_logs = vec![0u32];
    let mut k = 1;
    loop {
        let pk = p.pow(k);
        let count = a.element_orders().iter().filter(|&&o| pk % o as usize == 0).count();
        let mut log = 0;
        let mut c = count;
        while c > 1 {
            c /= p;
            log += 1;
        }
        omega_logs.push(log);
        if count == a.order() {
            break;
        }
        k += 1;
    }
    // number of factors of exponent ≥ k is log|Ω_k| - log|Ω_{k-1}|
    let ge: Vec<u32> = omega_logs.windows(2).map(|w| w[1] - w[0]).collect();
    let mut factors = Vec::new();
    for (idx, &n) in ge.iter().enumerate() {
        let next = ge.get(idx + 1).copied().unwrap_or(0);
        for _ in 0..(n - next) {
            factors.push(p.pow(idx as u32 + 1));
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(factors)
}

pub fn conjugacy_classes(g: &GroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for y in 0..n {
            let c = g.conjugate(x, y);
            if class_of[c] == usize::MAX {
                class_of[c] = id;
                members.push(c);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

fn class_size_histogram(g: &GroupTable) -> Vec<(usize, usize)> {
    let mut h = std::collections::BTreeMap::new();
    for c in conjugacy_classes(g) {
        *h.entry(c.len()).or_insert(0usize) += 1;
    }
    h.into_iter().collect()
}
