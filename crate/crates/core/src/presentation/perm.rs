use std::collections::HashMap;

use crate::algebra::{GroupTable, MAX_TABLE_ORDER};
use crate::error::{Error, Result};
use crate::presentation::validate::validate_axioms;

/// Builds the group generated by permutations of `0..degree`.
///
/// A permutation is its image list; products compose left to right
/// (`(a·b)(i) = b(a(i))`). Elements are numbered identity first, then in
/// lexicographic order of image lists, so the result does not depend on the
/// order in which generators are given.
pub fn build_from_permutations(
    degree: usize,
    gens: &[Vec<usize>],
    order_bound: usize,
) -> Result<GroupTable> {
    for (k, g) in gens.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {k} has {} images, expected {degree}",
                g.len()
            )));
        }
        let mut hit = vec![false; degree];
        for &i in g {
            if i >= degree || std::mem::replace(&mut hit[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "generator {k} is not a bijection of 0..{degree}"
                )));
            }
        }
    }
    let bound = order_bound.min(MAX_TABLE_ORDER);
    let identity: Vec<usize> = (0..degree).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&i| b[i]).collect() };
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = compose(&elems[i], g);
            if !index.contains_key(&h) {
                if elems.len() == bound {
                    return Err(Error::BoundExceeded {
                        order: elems.len() + 1,
                        bound,
                    });
                }
                index.insert(h.clone(), elems.len());
                elems.push(h);
            }
        }
        i += 1;
    }
    elems[1..].sort();
    let index: HashMap<&[usize], usize> =
        elems.iter().enumerate().map(|(k, e)| (e.as_slice(), k)).collect();
    let n = elems.len();
    let mut flat = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            flat[a * n + b] = index[compose(&elems[a], &elems[b]).as_slice()];
        }
    }
    let table = GroupTable::from_table(format!("perm{degree}"), n, flat)?;
    let report = validate_axioms(&table);
    if !(report.identity_ok && report.inverses_ok && report.associativity_ok) {
        return Err(Error::MalformedTable(format!("{report:?}")));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_generator_gives_trivial_group() {
        let g = build_from_permutations(3, &[vec![0, 1, 2]], 100).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn dihedral_of_order_8() {
        let rot = vec![1, 2, 3, 0];
        let refl = vec![0, 3, 2, 1];
        let g = build_from_permutations(4, &[rot, refl], 100).unwrap();
        assert_eq!(g.order(), 8);
        let involutions = (0..8).filter(|&x| g.order_of(x) == 2).count();
        assert_eq!(involutions, 5);
    }

    #[test]
    fn quaternion_on_eight_points() {
        // Regular representation of Q8 on {1,i,j,k,-1,-i,-j,-k} = 0..8.
        let i = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let j = vec![2, 7, 4, 1, 6, 3, 0, 5];
        let g = build_from_permutations(8, &[i, j], 100).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!((0..8).filter(|&x| g.order_of(x) == 2).count(), 1);
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = vec![1, 2, 0, 3];
        let b = vec![1, 0, 3, 2];
        let g1 = build_from_permutations(4, &[a.clone(), b.clone()], 100).unwrap();
        let g2 = build_from_permutations(4, &[b, a], 100).unwrap();
        assert_eq!(g1.raw_table(), g2.raw_table());
    }

    #[test]
    fn rejects_bad_input_and_bound() {
        assert!(build_from_permutations(3, &[vec![0, 0, 1]], 10).is_err());
        assert!(build_from_permutations(3, &[vec![0, 1]], 10).is_err());
        let s4 = [vec![1, 2, 3, 0], vec![1, 0, 2, 3]];
        assert!(matches!(
            build_from_permutations(4, &s4, 10),
            Err(Error::BoundExceeded { .. })
        ));
        assert_eq!(build_from_permutations(4, &s4, 24).unwrap().order(), 24);
    }
}
