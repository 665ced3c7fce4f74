use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::table::{Elem, GroupTable};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Default enumeration bound exponent: lattices are enumerated for `|H| ≤ p^5`.
pub const DEFAULT_BOUND_EXPONENT: u32 = 5;

/// A subgroup of a parent [`GroupTable`], stored as a member bitset.
///
/// Two subgroups are equal iff they share the same parent (by address) and
/// the same members. Operations combining two subgroups return
/// [`Error::ParentMismatch`] when the parents differ.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g GroupTable,
    members: ElementSet,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl std::fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(|{}| in {}: {:?})", self.order(), self.parent.name(), self.members)
    }
}

/// Which central series a [`SeriesReport`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    UpperCentral,
    LowerCentral,
}

/// Terms of a central series, listed ascending (`Z₀ = 1 < Z₁ < …` for the
/// upper series, `… < γ₂ < γ₁ = H` for the lower one).
#[derive(Debug, Clone)]
pub struct SeriesReport<'g> {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup<'g>>,
}

impl SeriesReport<'_> {
    /// Number of steps between the first and last term.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }
}

impl<'g> Subgroup<'g> {
    pub(crate) fn from_set_unchecked(parent: &'g GroupTable, members: ElementSet) -> Self {
        debug_assert_eq!(members.capacity(), parent.order());
        Self { parent, members }
    }

    /// Wraps `elements` as a subgroup after checking identity, closure and inverses.
    pub fn from_elements(parent: &'g GroupTable, elements: &[Elem]) -> Result<Self> {
        for &g in elements {
            parent.check_elem(g)?;
        }
        let members = ElementSet::from_indices(parent.order(), elements.iter().copied());
        Self::from_set(parent, members)
    }

    pub fn from_set(parent: &'g GroupTable, members: ElementSet) -> Result<Self> {
        if members.capacity() != parent.order() {
            return Err(Error::ParentMismatch);
        }
        if !members.contains(0) {
            return Err(Error::NotContained("identity"));
        }
        let elems: Vec<Elem> = members.iter().collect();
        for &a in &elems {
            if !members.contains(parent.inv(a)) {
                return Err(Error::NotContained("inverse of a member"));
            }
            for &b in &elems {
                if !members.contains(parent.mul(a, b)) {
                    return Err(Error::NotContained("product of members"));
                }
            }
        }
        Ok(Self { parent, members })
    }

    pub fn parent(&self) -> &'g GroupTable {
        self.parent
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn prime(&self) -> Option<u32> {
        self.parent.prime()
    }

    /// `k` with `|H| = p^k`, for subgroups of a p-group.
    pub fn log_order(&self) -> Result<u32> {
        let p = self.parent.require_prime()? as usize;
        let (mut n, mut k) = (self.order(), 0);
        while n > 1 {
            n /= p;
            k += 1;
        }
        Ok(k)
    }

    pub fn same_parent(&self, other: &Subgroup<'_>) -> Result<()> {
        if std::ptr::eq(self.parent, other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.members.is_subset(&other.members))
    }

    pub fn intersection(&self, other: &Subgroup<'g>) -> Result<Subgroup<'g>> {
        self.same_parent(other)?;
        Ok(Self::from_set_unchecked(self.parent, self.members.intersection(&other.members)))
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup<'g>) -> Result<Subgroup<'g>> {
        self.same_parent(other)?;
        let mut gens = self.generators();
        gens.extend(other.generators());
        Ok(Self::from_set_unchecked(self.parent, self.parent.generate(&gens)))
    }

    /// Subgroup of the parent generated by `gens` together with `self`.
    pub fn join_elements(&self, extra: &[Elem]) -> Result<Subgroup<'g>> {
        for &g in extra {
            self.parent.check_elem(g)?;
        }
        let mut gens = self.generators();
        gens.extend_from_slice(extra);
        Ok(Self::from_set_unchecked(
            self.parent,
            self.parent.generate_from(self.members.clone(), &gens),
        ))
    }

    /// Subgroup of `self` generated by `gens` (which must lie in `self`).
    pub fn closure_within(&self, gens: &[Elem]) -> Result<Subgroup<'g>> {
        for &g in gens {
            self.parent.check_elem(g)?;
            if !self.contains(g) {
                return Err(Error::NotContained("generator"));
            }
        }
        Ok(Self::from_set_unchecked(self.parent, self.parent.generate(gens)))
    }

    /// A generating set chosen greedily in ascending element order.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = ElementSet::from_indices(self.parent.order(), [0]);
        for g in self.members.iter() {
            if !span.contains(g) {
                gens.push(g);
                span = self.parent.generate_from(span, &gens);
                if span.count() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.parent.mul(a, b) == self.parent.mul(b, a)))
    }

    /// `Z(H)`.
    pub fn center(&self) -> Subgroup<'g> {
        let gens = self.generators();
        let g = self.parent;
        let members = ElementSet::from_indices(
            g.order(),
            self.members
                .iter()
                .filter(|&z| gens.iter().all(|&h| g.mul(z, h) == g.mul(h, z))),
        );
        Self::from_set_unchecked(g, members)
    }

    /// `C_H(h) = {x ∈ H : xh = hx}`.
    pub fn centralizer(&self, h: Elem) -> Result<Subgroup<'g>> {
        let g = self.parent;
        g.check_elem(h)?;
        let members = ElementSet::from_indices(
            g.order(),
            self.members.iter().filter(|&x| g.mul(x, h) == g.mul(h, x)),
        );
        Ok(Self::from_set_unchecked(g, members))
    }

    /// `N_self(sub)`; `sub` must be a subgroup of `self`.
    pub fn normalizer(&self, sub: &Subgroup<'g>) -> Result<Subgroup<'g>> {
        if !sub.is_subgroup_of(self)? {
            return Err(Error::NotContained("subgroup"));
        }
        let g = self.parent;
        let gens = sub.generators();
        let members = ElementSet::from_indices(
            g.order(),
            self.members
                .iter()
                .filter(|&x| gens.iter().all(|&s| sub.contains(g.conjugate(s, x)))),
        );
        Ok(Self::from_set_unchecked(g, members))
    }

    pub fn is_normal_in(&self, ambient: &Subgroup<'g>) -> Result<bool> {
        if !self.is_subgroup_of(ambient)? {
            return Err(Error::NotContained("subgroup"));
        }
        let g = self.parent;
        let gens = self.generators();
        let amb_gens = ambient.generators();
        Ok(amb_gens
            .iter()
            .all(|&x| gens.iter().all(|&s| self.contains(g.conjugate(s, x)))))
    }

    /// `H' = ⟨[x, y] : x, y ∈ H⟩`, computed from `[g, y]` for generators `g`.
    pub fn derived_subgroup(&self) -> Subgroup<'g> {
        let g = self.parent;
        let gens = self.generators();
        let mut comms: Vec<Elem> = Vec::new();
        let mut seen = ElementSet::from_indices(g.order(), [0]);
        for &a in &gens {
            for y in self.members.iter() {
                let c = g.commutator(a, y);
                if seen.insert(c) {
                    comms.push(c);
                }
            }
        }
        Self::from_set_unchecked(g, g.generate(&comms))
    }

    /// `℧₁(H) = ⟨h^p : h ∈ H⟩`.
    pub fn agemo1(&self) -> Result<Subgroup<'g>> {
        let g = self.parent;
        if self.is_trivial() {
            return Ok(self.clone());
        }
        let p = g.require_prime()? as i64;
        let mut seen = ElementSet::from_indices(g.order(), [0]);
        let mut powers = Vec::new();
        for h in self.members.iter() {
            let x = g.pow(h, p);
            if seen.insert(x) {
                powers.push(x);
            }
        }
        Ok(Self::from_set_unchecked(g, g.generate(&powers)))
    }

    /// `Φ(H)` as the intersection of all maximal subgroups.
    pub fn frattini(&self) -> Result<Subgroup<'g>> {
        if self.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        let maxes = self.maximal_subgroups()?;
        let mut acc = self.members.clone();
        for m in &maxes {
            acc = acc.intersection(&m.members);
        }
        Ok(Self::from_set_unchecked(self.parent, acc))
    }

    /// `H'·℧₁(H)`, which equals `Φ(H)` for p-groups.
    pub fn frattini_pgroup(&self) -> Result<Subgroup<'g>> {
        if self.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        self.derived_subgroup().join(&self.agemo1()?)
    }

    /// Minimal number of generators `d(H) = log_p |H : Φ(H)|` for a p-group.
    pub fn rank(&self) -> Result<u32> {
        if self.is_trivial() {
            return Ok(0);
        }
        let phi = self.frattini_pgroup()?;
        let p = self.parent.require_prime()? as usize;
        let (mut idx, mut d) = (self.order() / phi.order(), 0);
        while idx > 1 {
            idx /= p;
            d += 1;
        }
        Ok(d)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.members
            .iter()
            .map(|g| self.parent.order_of(g))
            .fold(1, lcm)
    }

    pub fn upper_central_series(&self) -> Result<SeriesReport<'g>> {
        let g = self.parent;
        let gens = self.generators();
        let mut terms = vec![Self::from_set_unchecked(g, ElementSet::from_indices(g.order(), [0]))];
        loop {
            let last = terms.last().expect("series is non-empty");
            if last.order() == self.order() {
                break;
            }
            let next = ElementSet::from_indices(
                g.order(),
                self.members
                    .iter()
                    .filter(|&x| gens.iter().all(|&h| last.contains(g.commutator(x, h)))),
            );
            if next == last.members {
                return Err(Error::SeriesStalled);
            }
            terms.push(Self::from_set_unchecked(g, next));
        }
        Ok(SeriesReport {
            kind: SeriesKind::UpperCentral,
            terms,
        })
    }

    pub fn lower_central_series(&self) -> SeriesReport<'g> {
        let g = self.parent;
        let gens = self.generators();
        let mut desc = vec![self.clone()];
        loop {
            let last = desc.last().expect("series is non-empty");
            let mut comms = Vec::new();
            let mut seen = ElementSet::from_indices(g.order(), [0]);
            for x in last.members.iter() {
                for &h in &gens {
                    let c = g.commutator(x, h);
                    if seen.insert(c) {
                        comms.push(c);
                    }
                }
            }
            // [γ_i, H] is the normal closure of these commutators in H.
            let mut closure_gens = comms.clone();
            for &c in &comms {
                for y in self.members.iter() {
                    let d = g.conjugate(c, y);
                    if seen.insert(d) {
                        closure_gens.push(d);
                    }
                }
            }
            let next = g.generate(&closure_gens);
            if next == last.members {
                break;
            }
            desc.push(Self::from_set_unchecked(g, next));
        }
        desc.reverse();
        SeriesReport {
            kind: SeriesKind::LowerCentral,
            terms: desc,
        }
    }

    pub fn nilpotency_class(&self) -> Result<usize> {
        Ok(self.upper_central_series()?.length())
    }

    /// `self / n` as a standalone table; cosets are numbered by their least
    /// element, so the identity coset is `0`.
    pub fn quotient(&self, n: &Subgroup<'g>) -> Result<GroupTable> {
        if !n.is_normal_in(self)? {
            return Err(Error::NotNormal);
        }
        let g = self.parent;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in self.members.iter() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for k in n.members.iter() {
                coset_of[g.mul(x, k)] = id;
            }
        }
        let m = reps.len();
        let mut flat = vec![0usize; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                flat[i * m + j] = coset_of[g.mul(a, b)];
            }
        }
        GroupTable::from_table(format!("{}/N", g.name()), m, flat)
    }

    /// Regularity: `(ab)^p ∈ a^p b^p ℧₁(⟨a,b⟩')` for all `a, b ∈ H`.
    pub fn is_regular_pgroup(&self) -> Result<bool> {
        Ok(self.regularity_defect()?.is_none())
    }

    /// First pair `(a, b)` (ascending) violating regularity, if any.
    pub fn regularity_defect(&self) -> Result<Option<(Elem, Elem)>> {
        let g = self.parent;
        let p = g.require_prime()? as i64;
        let elems = self.to_vec();
        let cache: std::sync::Mutex<HashMap<ElementSet, ElementSet>> = Default::default();
        let defect = elems.par_iter().find_map_first(|&a| {
            let ap = g.pow(a, p);
            for &b in &elems {
                if g.mul(a, b) == g.mul(b, a) {
                    continue;
                }
                let lhs = g.pow(g.mul(a, b), p);
                let apbp = g.mul(ap, g.pow(b, p));
                let defect = g.mul(g.inv(apbp), lhs);
                if defect == 0 {
                    continue;
                }
                let pair = g.generate(&[a, b]);
                let cached = cache.lock().expect("poisoned").get(&pair).cloned();
                let mho = match cached {
                    Some(m) => m,
                    None => {
                        let k = Subgroup::from_set_unchecked(g, pair.clone());
                        let m = k
                            .derived_subgroup()
                            .agemo1()
                            .expect("parent is a p-group")
                            .members;
                        cache.lock().expect("poisoned").insert(pair, m.clone());
                        m
                    }
                };
                if !mho.contains(defect) {
                    return Some((a, b));
                }
            }
            None
        });
        Ok(defect)
    }

    /// Nilpotency class equals `n - 1` for `|H| = p^n`, `n ≥ 3`.
    pub fn is_maximal_class(&self) -> Result<bool> {
        let n = self.log_order()?;
        if n < 3 {
            return Err(Error::OrderTooSmallForMaximalClass(n));
        }
        Ok(self.nilpotency_class()? == (n - 1) as usize)
    }

    /// Every subgroup of `self` exactly once, sorted by `(order, members)`.
    ///
    /// Seeds with all cyclic subgroups and joins each found subgroup with
    /// each cyclic subgroup until no new subgroup appears.
    pub fn all_subgroups(&self, bound: usize) -> Result<Vec<Subgroup<'g>>> {
        if self.order() > bound {
            return Err(Error::BoundExceeded {
                order: self.order(),
                bound,
            });
        }
        let g = self.parent;
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut found: Vec<(ElementSet, Vec<Elem>)> = Vec::new();
        let mut cyclics: Vec<(ElementSet, Elem)> = Vec::new();
        for x in self.members.iter() {
            let c = g.generate(&[x]);
            if seen.insert(c.clone()) {
                cyclics.push((c.clone(), x));
                found.push((c, if x == 0 { vec![] } else { vec![x] }));
            }
        }
        let mut i = 0;
        while i < found.len() {
            let (k, gens) = found[i].clone();
            for (c, x) in &cyclics {
                if c.is_subset(&k) {
                    continue;
                }
                let mut jg = gens.clone();
                jg.push(*x);
                let j = g.generate_from(k.clone(), &jg);
                if !seen.contains(&j) {
                    seen.insert(j.clone());
                    found.push((j, jg));
                }
            }
            i += 1;
        }
        let mut sets: Vec<ElementSet> = found.into_iter().map(|(s, _)| s).collect();
        sets.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
        Ok(sets
            .into_iter()
            .map(|s| Self::from_set_unchecked(g, s))
            .collect())
    }

    /// Maximal subgroups; for a p-group these are exactly the subgroups of index p.
    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup<'g>>> {
        let all = self.all_subgroups(usize::MAX)?;
        Ok(maximal_among(self, all))
    }

    /// Induced multiplication table on the members (ascending), with the
    /// embedding `local index → parent index`.
    pub fn to_table(&self) -> Result<(GroupTable, Vec<Elem>)> {
        let g = self.parent;
        let elems = self.to_vec();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i;
        }
        let m = elems.len();
        let mut flat = vec![0usize; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                flat[i * m + j] = local[g.mul(a, b)];
            }
        }
        let t = GroupTable::from_table(format!("{}[{}]", g.name(), m), m, flat)?;
        Ok((t, elems))
    }
}

/// Maximal members of `subs` among proper subgroups of `h` (`subs` must be
/// the complete lattice of `h`).
pub(crate) fn maximal_among<'g>(h: &Subgroup<'g>, subs: Vec<Subgroup<'g>>) -> Vec<Subgroup<'g>> {
    let n = h.order();
    if let Some(p) = h.prime() {
        let target = n / p as usize;
        return subs
            .into_iter()
            .filter(|s| s.order() == target && s.members.is_subset(&h.members))
            .collect();
    }
    let proper: Vec<_> = subs.into_iter().filter(|s| s.order() < n).collect();
    proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order() > s.order() && s.members.is_subset(&t.members))
        })
        .cloned()
        .collect()
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
