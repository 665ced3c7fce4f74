//! Isolated subgroups, minimal nonabelian subgroups, `S(p³)` recognition and
//! the Hughes subgroup, plus [`GroupAnalysis`], a per-group cache of the
//! subgroup lattice shared by the checkers.

use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{default_bound, Elem, GroupTable, Subgroup};
use crate::error::{Error, Result};

/// Verdict of [`is_isolated`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Isolation {
    Isolated,
    /// `witness ∉ H` and `⟨witness⟩ ∩ H ≠ 1`; the least such index.
    NotIsolated { witness: Elem },
}

impl Isolation {
    pub fn is_isolated(&self) -> bool {
        matches!(self, Isolation::Isolated)
    }

    pub fn witness(&self) -> Option<Elem> {
        match self {
            Isolation::Isolated => None,
            Isolation::NotIsolated { witness } => Some(*witness),
        }
    }
}

/// `H` is isolated in `ambient` iff every `x ∈ ambient` has `x ∈ H` or
/// `⟨x⟩ ∩ H = 1`.
pub fn is_isolated(h: &Subgroup<'_>, ambient: &Subgroup<'_>) -> Result<Isolation> {
    if !h.is_subgroup_of(ambient)? {
        return Err(Error::NotContained("subgroup"));
    }
    let g = h.parent();
    for x in ambient.elements() {
        if h.contains(x) {
            continue;
        }
        let mut y = x;
        while y != 0 {
            if h.contains(y) {
                return Ok(Isolation::NotIsolated { witness: x });
            }
            y = g.mul(y, x);
        }
    }
    Ok(Isolation::Isolated)
}

/// Independent re-check of a non-isolation witness: `x ∈ ambient \ H` and
/// the closure `⟨x⟩` meets `H` nontrivially.
pub fn verify_isolation_witness(h: &Subgroup<'_>, ambient: &Subgroup<'_>, x: Elem) -> bool {
    if x >= h.parent().order() || !ambient.contains(x) || h.contains(x) {
        return false;
    }
    match h.parent().closure(&[x]) {
        Ok(cyc) => cyc.intersection(h).map(|i| !i.is_trivial()).unwrap_or(false),
        Err(_) => false,
    }
}

/// Nonabelian with every maximal subgroup abelian.
pub fn is_minimal_nonabelian(h: &Subgroup<'_>) -> Result<bool> {
    if h.is_abelian() {
        return Ok(false);
    }
    Ok(h.maximal_subgroups()?.iter().all(Subgroup::is_abelian))
}

/// Minimal nonabelian subgroups of `g`, in lattice order.
pub fn minimal_nonabelian_subgroups<'g>(g: &Subgroup<'g>, bound: usize) -> Result<Vec<Subgroup<'g>>> {
    let lattice = g.all_subgroups(bound)?;
    Ok(mna_in_lattice(&lattice))
}

fn mna_in_lattice<'g>(lattice: &[Subgroup<'g>]) -> Vec<Subgroup<'g>> {
    let abelian: Vec<bool> = lattice.iter().map(Subgroup::is_abelian).collect();
    lattice
        .iter()
        .enumerate()
        .filter(|&(i, k)| {
            !abelian[i] && maximal_in_lattice(lattice, k).all(|j| abelian[j])
        })
        .map(|(_, k)| k.clone())
        .collect()
}

/// Indices of lattice members that are maximal subgroups of `k`
/// (index `p`, for a p-group lattice).
fn maximal_in_lattice<'a>(
    lattice: &'a [Subgroup<'_>],
    k: &'a Subgroup<'_>,
) -> impl Iterator<Item = usize> + 'a {
    let p = k.prime().unwrap_or(1) as usize;
    let target = k.order() / p;
    lattice
        .iter()
        .enumerate()
        .filter(move |(_, s)| s.order() == target && s.members().is_subset(k.members()))
        .map(|(i, _)| i)
}

/// Nonabelian of order `p³` and exponent `p`; this pins down `S(p³)` for odd
/// `p` and is never true for `p = 2`.
pub fn is_s_p3(h: &Subgroup<'_>) -> bool {
    let Some(p) = h.prime() else { return false };
    let p = p as usize;
    p > 2 && h.order() == p * p * p && h.exponent() == p && !h.is_abelian()
}

/// `H_p(G) = ⟨x ∈ G : o(x) > p⟩`; trivial when `exp(G) = p`.
pub fn hughes_subgroup<'g>(g: &Subgroup<'g>) -> Result<Subgroup<'g>> {
    let t = g.parent();
    let p = t.require_prime()? as usize;
    let gens: Vec<Elem> = g.elements().filter(|&x| t.order_of(x) > p).collect();
    g.closure_within(&gens)
}

/// One minimal nonabelian subgroup with its normalizer and isolation data.
#[derive(Debug, Clone)]
pub struct MnaEntry<'g> {
    pub subgroup: Subgroup<'g>,
    pub is_s_p3: bool,
    pub normalizer: Subgroup<'g>,
    pub in_normalizer: Isolation,
    pub in_group: Isolation,
}

#[derive(Debug, Clone)]
pub struct MnaReport<'g> {
    pub entries: Vec<MnaEntry<'g>>,
}

impl MnaReport<'_> {
    pub fn all_s_p3(&self) -> bool {
        self.entries.iter().all(|e| e.is_s_p3)
    }

    pub fn all_isolated_in_normalizers(&self) -> bool {
        self.entries.iter().all(|e| e.in_normalizer.is_isolated())
    }

    pub fn all_isolated_in_group(&self) -> bool {
        self.entries.iter().all(|e| e.in_group.is_isolated())
    }
}

fn build_mna_report<'g>(g: &Subgroup<'g>, mna: &[Subgroup<'g>]) -> Result<MnaReport<'g>> {
    let entries = mna
        .iter()
        .map(|s| {
            let normalizer = g.normalizer(s)?;
            Ok(MnaEntry {
                is_s_p3: is_s_p3(s),
                in_normalizer: is_isolated(s, &normalizer)?,
                in_group: is_isolated(s, g)?,
                normalizer,
                subgroup: s.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MnaReport { entries })
}

/// Minimal nonabelian subgroups of `g` with normalizers and isolation verdicts.
pub fn mna_report<'g>(g: &Subgroup<'g>, bound: usize) -> Result<MnaReport<'g>> {
    build_mna_report(g, &minimal_nonabelian_subgroups(g, bound)?)
}

/// Lazily computed lattice data for one group, shared across checks.
pub struct GroupAnalysis<'g> {
    group: &'g GroupTable,
    bound: usize,
    lattice: OnceLock<Result<Vec<Subgroup<'g>>>>,
    mna: OnceLock<Result<Vec<Subgroup<'g>>>>,
    report: OnceLock<Result<MnaReport<'g>>>,
}

impl<'g> GroupAnalysis<'g> {
    /// Uses the default enumeration bound `p^5`.
    pub fn new(group: &'g GroupTable) -> Self {
        Self::with_bound(group, default_bound(group))
    }

    pub fn with_bound(group: &'g GroupTable, bound: usize) -> Self {
        Self {
            group,
            bound,
            lattice: OnceLock::new(),
            mna: OnceLock::new(),
            report: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn whole(&self) -> Subgroup<'g> {
        self.group.whole()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// All subgroups, sorted by `(order, members)`.
    pub fn subgroups(&self) -> Result<&[Subgroup<'g>]> {
        self.lattice
            .get_or_init(|| self.group.whole().all_subgroups(self.bound))
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Maximal subgroups of `k` (a p-subgroup), taken from the cached lattice.
    pub fn maximal_subgroups_of(&self, k: &Subgroup<'g>) -> Result<Vec<&Subgroup<'g>>> {
        let lattice = self.subgroups()?;
        Ok(maximal_in_lattice(lattice, k).map(|i| &lattice[i]).collect())
    }

    pub fn minimal_nonabelian(&self) -> Result<&[Subgroup<'g>]> {
        self.mna
            .get_or_init(|| {
                if self.group.is_abelian() {
                    return Ok(Vec::new());
                }
                Ok(mna_in_lattice(self.subgroups()?))
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn mna_report(&self) -> Result<&MnaReport<'g>> {
        self.report
            .get_or_init(|| build_mna_report(&self.whole(), self.minimal_nonabelian()?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_minimal_nonabelian(&self) -> Result<bool> {
        let mna = self.minimal_nonabelian()?;
        Ok(mna.last().is_some_and(Subgroup::is_whole))
    }
}
