//! One checker per statement. Each scans its hypotheses in a fixed order
//! (ascending subgroup order, then ascending element index) and stops at the
//! first counterexample.

use std::collections::BTreeMap;

use crate::algebra::{Elem, GroupTable, Subgroup};
use crate::catalog::{CatalogEntry, Tag};
use crate::error::Result;
use crate::predicates::{is_isolated, GroupAnalysis};
use crate::verifier::witness::{cube_identity_sides, hughes_structure, SubgroupRef, Witness};
use crate::verifier::{Status, Value};

#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub status: Status,
    pub counterexample: Option<Witness>,
    pub witness: Option<Witness>,
    pub evidence: BTreeMap<&'static str, Value>,
    pub configurations: u64,
}

impl Outcome {
    fn pass() -> Self {
        Self {
            status: Status::Pass,
            counterexample: None,
            witness: None,
            evidence: BTreeMap::new(),
            configurations: 0,
        }
    }

    fn na(reason: &str) -> Self {
        Self {
            status: Status::NotApplicable,
            ..Self::pass()
        }
        .note("reason", reason)
    }

    fn fail(mut self, w: Witness) -> Self {
        self.status = Status::Fail;
        self.counterexample = Some(w);
        self
    }

    fn note(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.evidence.insert(key, v.into());
        self
    }
}

fn p_of(g: &GroupTable) -> Option<usize> {
    g.prime().map(|p| p as usize)
}

fn noncommuting_pair(h: &Subgroup<'_>) -> Option<(Elem, Elem)> {
    let g = h.parent();
    h.elements()
        .flat_map(|a| h.elements().map(move |b| (a, b)))
        .find(|&(a, b)| g.mul(a, b) != g.mul(b, a))
}

/// Proper isolated subgroups of a 2-group are abelian.
pub(crate) fn lemma1(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if p_of(g) != Some(2) {
        return Ok(Outcome::na("not a 2-group"));
    }
    let whole = an.whole();
    let mut out = Outcome::pass();
    let mut isolated = 0u64;
    for h in an.subgroups()?.iter().filter(|h| !h.is_whole()) {
        out.configurations += 1;
        if !is_isolated(h, &whole)?.is_isolated() {
            continue;
        }
        isolated += 1;
        if let Some((a, b)) = noncommuting_pair(h) {
            return Ok(out.fail(Witness::NonabelianIsolated { subgroup: SubgroupRef::of(h), a, b }));
        }
    }
    Ok(out.note("isolated_proper_subgroups", isolated))
}

/// In a 3-group, for maximal `M` with every element of `G − M` of order
/// dividing 3, commuting `a, b ∈ M` give `[a^x, b] = 1` for `x ∈ G − M`.
pub(crate) fn lemma2(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if p_of(g) != Some(3) {
        return Ok(Outcome::na("not a 3-group"));
    }
    let whole = an.whole();
    let mut out = Outcome::pass();
    let mut qualifying = 0u64;
    for m in an.maximal_subgroups_of(&whole)? {
        let outside: Vec<Elem> = (0..g.order()).filter(|&y| !m.contains(y)).collect();
        if !outside.iter().all(|&y| g.pow(y, 3) == 0) {
            continue;
        }
        qualifying += 1;
        for a in m.elements() {
            for b in m.elements() {
                if g.mul(a, b) != g.mul(b, a) {
                    continue;
                }
                for &x in &outside {
                    out.configurations += 1;
                    if g.commutator(g.conjugate(a, x), b) != 0 {
                        let w = Witness::Lemma2Violation { maximal: SubgroupRef::of(m), a, b, x };
                        return Ok(out.fail(w));
                    }
                }
            }
        }
    }
    if qualifying == 0 {
        return Ok(Outcome::na("no maximal subgroup with all outside elements of order dividing 3"));
    }
    Ok(out.note("qualifying_maximal_subgroups", qualifying))
}

/// Proper isolated minimal nonabelian subgroups are `S(p³)`.
pub(crate) fn lemma3(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    if an.group().prime().is_none() {
        return Ok(Outcome::na("not a p-group"));
    }
    let report = an.mna_report()?;
    let mut out = Outcome::pass();
    for e in &report.entries {
        if e.subgroup.is_whole() || !e.in_group.is_isolated() {
            continue;
        }
        out.configurations += 1;
        if !e.is_s_p3 {
            return Ok(out.fail(Witness::IsolatedNotSp3 { subgroup: SubgroupRef::of(&e.subgroup) }));
        }
    }
    if out.configurations == 0 {
        return Ok(Outcome::na("no proper isolated minimal nonabelian subgroup"));
    }
    Ok(out)
}

/// The cube identity over all `H` maximal in `T ≤ G` with `T' ≤ Z(H)`.
pub(crate) fn cube(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if p_of(g) != Some(3) {
        return Ok(Outcome::na("not a 3-group"));
    }
    let mut out = Outcome::pass();
    let mut pairs = 0u64;
    for t in an.subgroups()? {
        let derived = t.derived_subgroup();
        for h in an.maximal_subgroups_of(t)? {
            if !derived.is_subgroup_of(&h.center())? {
                continue;
            }
            pairs += 1;
            for x in t.elements().filter(|&x| !h.contains(x)) {
                for a in h.elements() {
                    out.configurations += 1;
                    let (lhs, rhs) = cube_identity_sides(g, x, a);
                    if lhs != rhs {
                        let w = Witness::CubeViolation {
                            t: SubgroupRef::of(t),
                            h: SubgroupRef::of(h),
                            x,
                            a,
                        };
                        return Ok(out.fail(w));
                    }
                }
            }
        }
    }
    Ok(out.note("qualifying_pairs", pairs))
}

/// All minimal nonabelian subgroups are `S(p³)` iff `exp(G) = p` or
/// `H_p(G)` is abelian of index `p` with a complement of order `p`.
pub(crate) fn lemma4(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    let Some(p) = p_of(g).filter(|&p| p > 2) else {
        return Ok(Outcome::na("not a p-group for odd p"));
    };
    if g.is_abelian() {
        return Ok(Outcome::na("abelian"));
    }
    let report = an.mna_report()?;
    let a = report.all_s_p3();
    let (b, hughes) = hughes_structure(g)?;
    let mut out = Outcome::pass()
        .note("all_mna_sp3", a)
        .note("structure_holds", b)
        .note("exponent", g.exponent() as u64)
        .note("hughes_order", hughes.order() as u64)
        .note("hughes_abelian", hughes.is_abelian());
    out.configurations = report.entries.len() as u64;
    if a != b {
        let non_sp3 = report.entries.iter().find(|e| !e.is_s_p3);
        return Ok(out.fail(Witness::HughesMismatch {
            all_mna_sp3: a,
            structure_holds: b,
            non_sp3_mna: non_sp3.map(|e| SubgroupRef::of(&e.subgroup)),
            hughes: SubgroupRef::of(&hughes),
        }));
    }
    if b && g.exponent() > p && g.order() <= p.pow(4) {
        out = match decomposition(an, &hughes)? {
            Some((a, factors)) => out
                .note("decomposition_found", true)
                .note("complement", a as u64)
                .note("factors", Value::Subgroups(factors.iter().map(SubgroupRef::of).collect())),
            None => out.note("decomposition_found", false),
        };
    }
    Ok(out)
}

/// Searches for `a ∉ H` of order `p` and `H = B₁ × ⋯ × Bₙ` with every `Bᵢ`
/// normalized by `a`, `Bᵢ⟨a⟩` of maximal class and all of `Bᵢ⟨a⟩ − Bᵢ` of
/// order `p`. Informational only.
fn decomposition<'g>(an: &GroupAnalysis<'g>, h: &Subgroup<'g>) -> Result<Option<(Elem, Vec<Subgroup<'g>>)>> {
    let g = an.group();
    let p = g.require_prime()? as usize;
    let lattice = an.subgroups()?;
    for a in (0..g.order()).filter(|&a| !h.contains(a) && g.order_of(a) == p) {
        let mut candidates = Vec::new();
        for b in lattice {
            if b.is_trivial() || !b.is_subgroup_of(h)? {
                continue;
            }
            if !b.generators().iter().all(|&y| b.contains(g.conjugate(y, a))) {
                continue;
            }
            let k = b.join_elements(&[a])?;
            if k.order() < p * p * p || !k.is_maximal_class()? {
                continue;
            }
            if k.elements().all(|y| b.contains(y) || g.order_of(y) == p) {
                candidates.push(b.clone());
            }
        }
        let mut chosen = Vec::new();
        if cover(h, &g.trivial(), &candidates, 0, &mut chosen)? {
            return Ok(Some((a, chosen)));
        }
    }
    Ok(None)
}

fn cover<'g>(
    h: &Subgroup<'g>,
    acc: &Subgroup<'g>,
    candidates: &[Subgroup<'g>],
    from: usize,
    chosen: &mut Vec<Subgroup<'g>>,
) -> Result<bool> {
    if acc.order() == h.order() {
        return Ok(true);
    }
    for (i, b) in candidates.iter().enumerate().skip(from) {
        if !acc.intersection(b)?.is_trivial() {
            continue;
        }
        // H is abelian, so the join is the direct product.
        let next = acc.join(b)?;
        chosen.push(b.clone());
        if cover(h, &next, candidates, i + 1, chosen)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn requires_nonabelian_exp_gt_p(g: &GroupTable) -> Option<&'static str> {
    match p_of(g) {
        None => Some("not a p-group"),
        Some(_) if g.is_abelian() => Some("abelian"),
        Some(p) if g.exponent() == p => Some("exponent p"),
        _ => None,
    }
}

/// For `p ≥ 5`, `exp(G) > p` and all minimal nonabelian subgroups `S(p³)`,
/// every such subgroup has a normalizer of exponent `p`.
pub(crate) fn lemma5(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if let Some(reason) = requires_nonabelian_exp_gt_p(g) {
        return Ok(Outcome::na(reason));
    }
    let p = g.require_prime()? as usize;
    if p < 5 {
        return Ok(Outcome::na("p < 5"));
    }
    let report = an.mna_report()?;
    if !report.all_s_p3() {
        return Ok(Outcome::na("some minimal nonabelian subgroup is not S(p^3)"));
    }
    let mut out = Outcome::pass();
    for e in &report.entries {
        out.configurations += 1;
        if let Some(x) = e.normalizer.elements().find(|&x| g.order_of(x) > p) {
            let w = Witness::NormalizerExponent { subgroup: SubgroupRef::of(&e.subgroup), element: x };
            return Ok(out.fail(w));
        }
    }
    Ok(out.note("mna_count", report.entries.len() as u64))
}

/// For `exp(G) > p`, `G` not minimal nonabelian: all minimal nonabelian
/// subgroups are isolated in their normalizers iff they are all `S(p³)`
/// and `p ≥ 5`.
pub(crate) fn theorem6(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if let Some(reason) = requires_nonabelian_exp_gt_p(g) {
        return Ok(Outcome::na(reason));
    }
    if an.is_minimal_nonabelian()? {
        return Ok(Outcome::na("minimal nonabelian"));
    }
    let p = g.require_prime()?;
    let report = an.mna_report()?;
    let l = report.all_isolated_in_normalizers();
    let r = p >= 5 && report.all_s_p3();
    let mut out = Outcome::pass().note("isolated_in_normalizers", l).note("all_mna_sp3_p_ge_5", r);
    out.configurations = report.entries.len() as u64;
    let non_isolated = report
        .entries
        .iter()
        .find_map(|e| e.in_normalizer.witness().map(|x| (e, x)));
    if let Some((e, x)) = non_isolated {
        out.witness = Some(Witness::NonIsolatedMna {
            subgroup: SubgroupRef::of(&e.subgroup),
            element: x,
            in_normalizer: true,
        });
    }
    if l != r {
        let (subgroup, element) = match (l, non_isolated) {
            (false, Some((e, x))) => (Some(SubgroupRef::of(&e.subgroup)), Some(x)),
            _ => (
                report.entries.iter().find(|e| !e.is_s_p3).map(|e| SubgroupRef::of(&e.subgroup)),
                None,
            ),
        };
        return Ok(out.fail(Witness::NormalizerIsolationMismatch {
            isolated_in_normalizers: l,
            all_mna_sp3_p_ge_5: r,
            subgroup,
            element,
        }));
    }
    Ok(out)
}

/// An order-81 entry of maximal class (by tag or by recomputation) has
/// exponent greater than 3.
pub(crate) fn order81(entry: &CatalogEntry, an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if g.order() != 81 {
        return Ok(Outcome::na("order is not 81"));
    }
    let tagged = entry.has_tag(Tag::MaximalClass);
    let computed = g.whole().is_maximal_class()?;
    if !tagged && !computed {
        return Ok(Outcome::na("not of maximal class"));
    }
    let exponent = g.exponent();
    let mut out = Outcome::pass()
        .note("tagged_maximal_class", tagged)
        .note("computed_maximal_class", computed)
        .note("exponent", exponent as u64);
    out.configurations = 1;
    if exponent <= 3 {
        return Ok(out.fail(Witness::MaximalClassExponent3 { group: entry.id.clone(), exponent }));
    }
    Ok(out)
}

/// For `G` nonabelian and not minimal nonabelian: all minimal nonabelian
/// subgroups are isolated in `G` iff `exp(G) = p`.
pub(crate) fn theorem7(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    let Some(p) = p_of(g) else {
        return Ok(Outcome::na("not a p-group"));
    };
    if g.is_abelian() {
        return Ok(Outcome::na("abelian"));
    }
    if an.is_minimal_nonabelian()? {
        return Ok(Outcome::na("minimal nonabelian"));
    }
    let report = an.mna_report()?;
    let l = report.all_isolated_in_group();
    let exponent = g.exponent();
    let mut out = Outcome::pass()
        .note("all_mna_isolated", l)
        .note("exponent", exponent as u64);
    out.configurations = report.entries.len() as u64;
    if let Some(e) = report.entries.iter().find(|e| !e.in_group.is_isolated()) {
        out.witness = Some(Witness::NonIsolatedMna {
            subgroup: SubgroupRef::of(&e.subgroup),
            element: e.in_group.witness().expect("not isolated"),
            in_normalizer: false,
        });
    }
    if l != (exponent == p) {
        return Ok(out.fail(Witness::IsolationExponentMismatch { all_isolated: l, exponent }));
    }
    if exponent == p {
        let whole = an.whole();
        let mut checked = 0u64;
        for h in an.subgroups()? {
            checked += 1;
            if let Some(x) = is_isolated(h, &whole)?.witness() {
                return Ok(out.fail(Witness::NonIsolatedSubgroup { subgroup: SubgroupRef::of(h), element: x }));
            }
        }
        out = out.note("subgroups_verified_isolated", checked);
    }
    Ok(out)
}

/// A nonabelian group is generated by its minimal nonabelian subgroups.
pub(crate) fn genmna(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    if g.is_abelian() {
        return Ok(Outcome::na("abelian"));
    }
    let mna = an.minimal_nonabelian()?;
    let gens: Vec<Elem> = mna.iter().flat_map(|s| s.generators()).collect();
    let span = g.closure(&gens)?;
    let mut out = Outcome::pass().note("mna_count", mna.len() as u64);
    out.configurations = mna.len() as u64;
    if !span.is_whole() {
        return Ok(out.fail(Witness::NotGeneratedByMna { generated: SubgroupRef::of(&span) }));
    }
    Ok(out)
}

/// A p-group of class less than `p` is regular.
pub(crate) fn regularity(an: &GroupAnalysis<'_>) -> Result<Outcome> {
    let g = an.group();
    let Some(p) = p_of(g) else {
        return Ok(Outcome::na("not a p-group"));
    };
    let whole = an.whole();
    let class = whole.nilpotency_class()?;
    if class >= p {
        return Ok(Outcome::na("class at least p").note("class", class as u64));
    }
    let mut out = Outcome::pass().note("class", class as u64);
    out.configurations = (g.order() * g.order()) as u64;
    if let Some((a, b)) = whole.regularity_defect()? {
        return Ok(out.fail(Witness::RegularityDefect { a, b }));
    }
    Ok(out)
}
