use crate::algebra::{Elem, GroupTable};
use crate::error::{Error, Result};
use crate::presentation::validate::validate_axioms;

/// `B ⋊ ⟨a⟩` with `a` of order `p` acting by `b^a = alpha(b)`.
///
/// `alpha` is an element map of `B` (`alpha[b]` is the image of `b`).
/// Element `(b, a^i)` has index `i·|B| + b`.
pub fn semidirect_product(b: &GroupTable, alpha: &[Elem], p: u32) -> Result<GroupTable> {
    let nb = b.order();
    if !b.is_abelian() {
        return Err(Error::InvalidAutomorphism("base group must be abelian".into()));
    }
    if alpha.len() != nb {
        return Err(Error::InvalidAutomorphism(format!(
            "map has {} entries, base has order {nb}",
            alpha.len()
        )));
    }
    let mut hit = vec![false; nb];
    for &x in alpha {
        if x >= nb || std::mem::replace(&mut hit[x], true) {
            return Err(Error::InvalidAutomorphism("map is not a bijection".into()));
        }
    }
    for x in 0..nb {
        for y in 0..nb {
            if alpha[b.mul(x, y)] != b.mul(alpha[x], alpha[y]) {
                return Err(Error::InvalidAutomorphism(format!(
                    "map is not multiplicative at ({x}, {y})"
                )));
            }
        }
    }
    let p = p as usize;
    // powers[i][x] = alpha^{-i}(x), the action of conjugation by a^{-i}.
    let mut inverse = vec![0; nb];
    for (x, &y) in alpha.iter().enumerate() {
        inverse[y] = x;
    }
    let mut powers = vec![(0..nb).collect::<Vec<_>>()];
    for i in 1..=p {
        let prev: &Vec<Elem> = &powers[i - 1];
        powers.push(prev.iter().map(|&x| inverse[x]).collect());
    }
    if powers[p].iter().enumerate().any(|(x, &y)| x != y) {
        return Err(Error::InvalidAutomorphism(format!("map^{p} is not the identity")));
    }
    let n = nb * p;
    let mut flat = vec![0usize; n * n];
    for x in 0..n {
        let (i, b1) = (x / nb, x % nb);
        for y in 0..n {
            let (j, b2) = (y / nb, y % nb);
            // (b1 a^i)(b2 a^j) = b1 · alpha^{-i}(b2) · a^{i+j}
            let prod = b.mul(b1, powers[i][b2]);
            flat[x * n + y] = ((i + j) % p) * nb + prod;
        }
    }
    let t = GroupTable::from_table(format!("{}:C{p}", b.name()), n, flat)?;
    let report = validate_axioms(&t);
    if !(report.identity_ok && report.inverses_ok && report.associativity_ok) {
        return Err(Error::MalformedTable(format!("{report:?}")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_action_is_direct_product() {
        let c3 = GroupTable::cyclic(3).unwrap();
        let id: Vec<Elem> = (0..3).collect();
        let g = semidirect_product(&c3, &id, 3).unwrap();
        assert_eq!(g.order(), 9);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn modular_group_of_order_125() {
        let c25 = GroupTable::cyclic(25).unwrap();
        let alpha: Vec<Elem> = (0..25).map(|x| x * 6 % 25).collect();
        let g = semidirect_product(&c25, &alpha, 5).unwrap();
        assert_eq!(g.order(), 125);
        assert_eq!(g.exponent(), 25);
        assert!(!g.is_abelian());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let c9 = GroupTable::cyclic(9).unwrap();
        let not_hom: Vec<Elem> = (0..9).map(|x| if x == 1 { 2 } else if x == 2 { 1 } else { x }).collect();
        assert!(semidirect_product(&c9, &not_hom, 3).is_err());
        // x ↦ 2x has order 6 in Aut(C9), so its cube is not the identity.
        let doubling: Vec<Elem> = (0..9).map(|x| 2 * x % 9).collect();
        assert!(semidirect_product(&c9, &doubling, 3).is_err());
    }
}
