use serde::Serialize;

use crate::algebra::{Elem, GroupTable, Subgroup};
use crate::error::{Error, Result};
use crate::predicates::{
    hughes_subgroup, is_isolated, is_minimal_nonabelian, is_s_p3, minimal_nonabelian_subgroups,
    verify_isolation_witness,
};

/// A subgroup recorded by its order and a generating set (ascending greedy
/// choice), so reports stay small and indices re-verify by closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRef {
    pub order: usize,
    pub generators: Vec<Elem>,
}

impl SubgroupRef {
    pub fn of(h: &Subgroup<'_>) -> Self {
        Self {
            order: h.order(),
            generators: h.generators(),
        }
    }

    /// Rebuilds the subgroup in `g`, checking the recorded order.
    pub fn resolve<'g>(&self, g: &'g GroupTable) -> Result<Subgroup<'g>> {
        for &x in &self.generators {
            g.check_elem(x)?;
        }
        let h = g.closure(&self.generators)?;
        if h.order() != self.order {
            return Err(Error::OrderMismatch(self.order, h.order()));
        }
        Ok(h)
    }
}

/// Structured evidence attached to a result, either as the counterexample of
/// a `Fail` or as a supporting witness of a `Pass`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A proper isolated subgroup with a non-commuting pair.
    NonabelianIsolated { subgroup: SubgroupRef, a: Elem, b: Elem },
    /// `M` maximal with `g³ = 1` off `M`, commuting `a, b ∈ M`, `x ∉ M`, `[a^x, b] ≠ 1`.
    Lemma2Violation { maximal: SubgroupRef, a: Elem, b: Elem, x: Elem },
    /// A proper isolated minimal nonabelian subgroup not of type `S(p³)`.
    IsolatedNotSp3 { subgroup: SubgroupRef },
    /// `H` maximal in `T`, `T' ≤ Z(H)`, `x ∈ T − H`, `a ∈ H` and the cube
    /// identity fails.
    CubeViolation { t: SubgroupRef, h: SubgroupRef, x: Elem, a: Elem },
    /// The two sides of the Hughes-subgroup equivalence disagree.
    HughesMismatch {
        all_mna_sp3: bool,
        structure_holds: bool,
        /// A minimal nonabelian subgroup not of type `S(p³)`, if any.
        non_sp3_mna: Option<SubgroupRef>,
        hughes: SubgroupRef,
    },
    /// An element of order `> p` normalizing a minimal nonabelian subgroup.
    NormalizerExponent { subgroup: SubgroupRef, element: Elem },
    /// The isolation-in-normalizer equivalence fails.
    NormalizerIsolationMismatch {
        isolated_in_normalizers: bool,
        all_mna_sp3_p_ge_5: bool,
        subgroup: Option<SubgroupRef>,
        element: Option<Elem>,
    },
    /// A maximal-class group of order 81 and exponent 3.
    MaximalClassExponent3 { group: String, exponent: usize },
    /// A minimal nonabelian subgroup with `x ∉ S`, `⟨x⟩ ∩ S ≠ 1`; the ambient
    /// is the normalizer of `S` when `in_normalizer` is set, else the group.
    NonIsolatedMna { subgroup: SubgroupRef, element: Elem, in_normalizer: bool },
    /// Isolation of all minimal nonabelian subgroups against the exponent.
    IsolationExponentMismatch { all_isolated: bool, exponent: usize },
    /// A subgroup that fails to be isolated in a group of exponent `p`.
    NonIsolatedSubgroup { subgroup: SubgroupRef, element: Elem },
    /// The minimal nonabelian subgroups generate a proper subgroup.
    NotGeneratedByMna { generated: SubgroupRef },
    /// A pair breaking regularity in a group of class `< p`.
    RegularityDefect { a: Elem, b: Elem },
}

/// The cube identity for `x, a`:
/// `(xa⁻¹)³ = x³ [x,a]³ [x,a,x] [x,a,a] a⁻³`, both sides returned.
pub fn cube_identity_sides(g: &GroupTable, x: Elem, a: Elem) -> (Elem, Elem) {
    let ai = g.inv(a);
    let lhs = g.pow(g.mul(x, ai), 3);
    let xa = g.commutator(x, a);
    let rhs = [
        g.pow(x, 3),
        g.pow(xa, 3),
        g.commutator3(x, a, x),
        g.commutator3(x, a, a),
        g.pow(a, -3),
    ]
    .into_iter()
    .fold(0, |acc, y| g.mul(acc, y));
    (lhs, rhs)
}

/// Whether `h` is a maximal subgroup of `t` (index `p`).
fn is_maximal_in(h: &Subgroup<'_>, t: &Subgroup<'_>) -> Result<bool> {
    let p = t.parent().require_prime()? as usize;
    Ok(h.is_subgroup_of(t)? && h.order() * p == t.order())
}

/// `B` of the Hughes-subgroup equivalence: exponent `p`, or `H_p(G)` abelian
/// of index `p` with an element of order `p` outside it.
pub(crate) fn hughes_structure(g: &GroupTable) -> Result<(bool, Subgroup<'_>)> {
    let p = g.require_prime()? as usize;
    let h = hughes_subgroup(&g.whole())?;
    if g.exponent() == p {
        return Ok((true, h));
    }
    let index_p = h.order() * p == g.order();
    let complement = (0..g.order()).any(|x| !h.contains(x) && g.order_of(x) == p);
    Ok((h.is_abelian() && index_p && complement, h))
}

impl Witness {
    /// Independently re-derives the property the witness claims, from the
    /// table and the predicates alone. `Ok(false)` means the witness is stale
    /// or wrong.
    pub fn reverify(&self, g: &GroupTable) -> Result<bool> {
        let whole = g.whole();
        Ok(match self {
            Witness::NonabelianIsolated { subgroup, a, b } => {
                let h = subgroup.resolve(g)?;
                !h.is_whole()
                    && is_isolated(&h, &whole)?.is_isolated()
                    && h.contains(*a)
                    && h.contains(*b)
                    && g.mul(*a, *b) != g.mul(*b, *a)
            }
            Witness::Lemma2Violation { maximal, a, b, x } => {
                let m = maximal.resolve(g)?;
                is_maximal_in(&m, &whole)?
                    && (0..g.order()).all(|y| m.contains(y) || g.pow(y, 3) == 0)
                    && m.contains(*a)
                    && m.contains(*b)
                    && g.mul(*a, *b) == g.mul(*b, *a)
                    && !m.contains(*x)
                    && g.commutator(g.conjugate(*a, *x), *b) != 0
            }
            Witness::IsolatedNotSp3 { subgroup } => {
                let h = subgroup.resolve(g)?;
                !h.is_whole()
                    && is_minimal_nonabelian(&h)?
                    && is_isolated(&h, &whole)?.is_isolated()
                    && !is_s_p3(&h)
            }
            Witness::CubeViolation { t, h, x, a } => {
                let t = t.resolve(g)?;
                let h = h.resolve(g)?;
                is_maximal_in(&h, &t)?
                    && t.derived_subgroup().is_subgroup_of(&h.center())?
                    && t.contains(*x)
                    && !h.contains(*x)
                    && h.contains(*a)
                    && {
                        let (lhs, rhs) = cube_identity_sides(g, *x, *a);
                        lhs != rhs
                    }
            }
            Witness::HughesMismatch { .. } => {
                let mna = minimal_nonabelian_subgroups(&whole, g.order())?;
                let a = mna.iter().all(is_s_p3);
                let (b, _) = hughes_structure(g)?;
                a != b
            }
            Witness::NormalizerExponent { subgroup, element } => {
                let s = subgroup.resolve(g)?;
                let p = g.require_prime()? as usize;
                is_minimal_nonabelian(&s)?
                    && whole.normalizer(&s)?.contains(*element)
                    && g.order_of(*element) > p
            }
            Witness::NormalizerIsolationMismatch { .. } => {
                let p = g.require_prime()?;
                let mna = minimal_nonabelian_subgroups(&whole, g.order())?;
                let mut l = true;
                for s in &mna {
                    l &= is_isolated(s, &whole.normalizer(s)?)?.is_isolated();
                }
                let r = p >= 5 && mna.iter().all(is_s_p3);
                l != r
            }
            Witness::MaximalClassExponent3 { .. } => {
                g.order() == 81 && whole.is_maximal_class()? && g.exponent() == 3
            }
            Witness::NonIsolatedMna { subgroup, element, in_normalizer } => {
                let s = subgroup.resolve(g)?;
                let ambient = if *in_normalizer { whole.normalizer(&s)? } else { whole.clone() };
                is_minimal_nonabelian(&s)? && verify_isolation_witness(&s, &ambient, *element)
            }
            Witness::IsolationExponentMismatch { .. } => {
                let p = g.require_prime()? as usize;
                let mna = minimal_nonabelian_subgroups(&whole, g.order())?;
                let mut l = true;
                for s in &mna {
                    l &= is_isolated(s, &whole)?.is_isolated();
                }
                l != (g.exponent() == p)
            }
            Witness::NonIsolatedSubgroup { subgroup, element } => {
                let h = subgroup.resolve(g)?;
                verify_isolation_witness(&h, &whole, *element)
            }
            Witness::NotGeneratedByMna { generated } => {
                let mna = minimal_nonabelian_subgroups(&whole, g.order())?;
                let gens: Vec<Elem> = mna.iter().flat_map(|s| s.generators()).collect();
                let span = g.closure(&gens)?;
                span.order() == generated.order && !span.is_whole()
            }
            Witness::RegularityDefect { a, b } => {
                let p = g.require_prime()? as usize;
                let k = g.closure(&[*a, *b])?;
                let mho = k.derived_subgroup().agemo1()?;
                let lhs = g.pow(g.mul(*a, *b), p as i64);
                let apbp = g.mul(g.pow(*a, p as i64), g.pow(*b, p as i64));
                whole.nilpotency_class()? < p && !mho.contains(g.mul(g.inv(apbp), lhs))
            }
        })
    }
}
