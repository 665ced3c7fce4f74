//! Backtracking isomorphism search over images of a minimal generating set.

use crate::algebra::{Elem, GroupTable};
use crate::bitset::ElementSet;
use crate::catalog::fingerprint::fingerprint;
use crate::error::{Error, Result};

/// Largest order accepted by [`are_isomorphic`].
pub const ISOMORPHISM_ORDER_LIMIT: usize = 729;

/// Per-element invariant preserved by isomorphisms:
/// (order, centralizer size, number of p-th roots).
fn signatures(g: &GroupTable) -> Vec<(usize, usize, usize)> {
    let n = g.order();
    let p = g.prime().unwrap_or(1) as i64;
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[g.pow(y, p)] += 1;
    }
    (0..n)
        .map(|x| {
            let cent = (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.order_of(x), cent, roots[x])
        })
        .collect()
}

/// Returns an isomorphism `G → H` as an element map (`map[g]` is the image
/// of `g`), or `None` when none exists.
///
/// `None` is returned either on a fingerprint mismatch or after the
/// backtracking search over generator images is exhausted. A returned map is
/// re-verified to be a bijective homomorphism.
pub fn are_isomorphic(g: &GroupTable, h: &GroupTable) -> Result<Option<Vec<Elem>>> {
    if g.order() != h.order() {
        return Err(Error::OrderMismatch(g.order(), h.order()));
    }
    let n = g.order();
    if n > ISOMORPHISM_ORDER_LIMIT {
        return Err(Error::BoundExceeded {
            order: n,
            bound: ISOMORPHISM_ORDER_LIMIT,
        });
    }
    if g.prime().is_some() && fingerprint(g)? != fingerprint(h)? {
        return Ok(None);
    }
    let sig_g = signatures(g);
    let sig_h = signatures(h);
    let mut hist_g = sig_g.clone();
    let mut hist_h = sig_h.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(None);
    }
    let gens = choose_generators(g, &sig_g, &sig_h)?;
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| (0..n).filter(|&y| sig_h[y] == sig_g[x]).collect())
        .collect();
    let mut search = Search {
        g,
        h,
        gens: &gens,
        candidates: &candidates,
        images: Vec::with_capacity(gens.len()),
    };
    let Some(map) = search.descend() else {
        return Ok(None);
    };
    verify_isomorphism(g, h, &map)?;
    Ok(Some(map))
}

/// Checks that `map` is a bijective homomorphism `G → H`.
pub fn verify_isomorphism(g: &GroupTable, h: &GroupTable, map: &[Elem]) -> Result<()> {
    let n = g.order();
    let bad = |m: String| Err(Error::MalformedTable(format!("not an isomorphism: {m}")));
    if map.len() != n || h.order() != n {
        return bad("size mismatch".into());
    }
    let mut hit = ElementSet::empty(n);
    for &y in map {
        if y >= n || !hit.insert(y) {
            return bad("not a bijection".into());
        }
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return bad(format!("fails at ({a}, {b})"));
            }
        }
    }
    Ok(())
}

/// A minimal generating set: elements outside `Φ(G)·⟨chosen⟩`, preferring
/// those whose signature is rarest in `H` to keep branching low.
fn choose_generators(
    g: &GroupTable,
    sig_g: &[(usize, usize, usize)],
    sig_h: &[(usize, usize, usize)],
) -> Result<Vec<Elem>> {
    let whole = g.whole();
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let mut span = match g.prime() {
        Some(_) => whole.frattini_pgroup()?.members().clone(),
        None => ElementSet::from_indices(g.order(), [0]),
    };
    let freq = |s: &(usize, usize, usize)| sig_h.iter().filter(|t| *t == s).count();
    let mut gens: Vec<Elem> = Vec::new();
    while span.count() < g.order() {
        let x = (0..g.order())
            .filter(|&x| !span.contains(x))
            .min_by_key(|&x| (freq(&sig_g[x]), x))
            .expect("span is proper");
        gens.push(x);
        // span ⊇ Φ is normal, so ⟨span, x⟩ is reached by right multiplication.
        let mut all_gens: Vec<Elem> = span.iter().collect();
        all_gens.extend(&gens);
        span = g.generate_from(span, &all_gens);
    }
    Ok(gens)
}

struct Search<'a> {
    g: &'a GroupTable,
    h: &'a GroupTable,
    gens: &'a [Elem],
    candidates: &'a [Vec<Elem>],
    images: Vec<Elem>,
}

impl Search<'_> {
    fn descend(&mut self) -> Option<Vec<Elem>> {
        let level = self.images.len();
        if level == self.gens.len() {
            let map = self.extend()?;
            return map.iter().all(|&v| v != usize::MAX).then_some(map);
        }
        for &y in &self.candidates[level] {
            self.images.push(y);
            if self.extend().is_some() {
                if let Some(m) = self.descend() {
                    return Some(m);
                }
            }
            self.images.pop();
        }
        None
    }

    /// Extends the chosen images to a map on `⟨g_1, …, g_k⟩`, or `None` if
    /// the assignment is inconsistent or not injective.
    fn extend(&self) -> Option<Vec<Elem>> {
        let (g, h) = (self.g, self.h);
        let k = self.images.len();
        let gens = &self.gens[..k];
        let mut map = vec![usize::MAX; g.order()];
        let mut used = ElementSet::empty(h.order());
        map[0] = 0;
        used.insert(0);
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            for (&s, &t) in gens.iter().zip(&self.images) {
                let f = g.mul(e, s);
                let img = h.mul(map[e], t);
                if map[f] == usize::MAX {
                    if !used.insert(img) {
                        return None;
                    }
                    map[f] = img;
                    queue.push(f);
                } else if map[f] != img {
                    return None;
                }
            }
            i += 1;
        }
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_isomorphism_found() {
        let c = GroupTable::cyclic(9).unwrap();
        let map = are_isomorphic(&c, &c).unwrap().unwrap();
        verify_isomorphism(&c, &c, &map).unwrap();
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let c3 = GroupTable::cyclic(3).unwrap();
        let g = GroupTable::direct_product(&c3, &GroupTable::cyclic(9).unwrap()).unwrap();
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        perm[1..].reverse();
        let h = g.relabel(&perm).unwrap();
        let map = are_isomorphic(&g, &h).unwrap().unwrap();
        verify_isomorphism(&g, &h, &map).unwrap();
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = GroupTable::cyclic(3).unwrap();
        let b = GroupTable::cyclic(9).unwrap();
        assert!(matches!(are_isomorphic(&a, &b), Err(Error::OrderMismatch(3, 9))));
    }

    #[test]
    fn different_abelian_groups() {
        let c9 = GroupTable::cyclic(9).unwrap();
        let c3 = GroupTable::cyclic(3).unwrap();
        let e9 = GroupTable::direct_product(&c3, &c3).unwrap();
        assert!(are_isomorphic(&c9, &e9).unwrap().is_none());
    }
}
