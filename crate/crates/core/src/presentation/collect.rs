//! Collection to normal form and table construction for polycyclic presentations.

use crate::algebra::{Elem, GroupTable, MAX_TABLE_ORDER};
use crate::error::{Error, Result};
use crate::presentation::parse::Presentation;
use crate::presentation::validate::validate_axioms;

/// Letters processed per product before collection is abandoned.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Collection from the left over a [`Presentation`].
///
/// Elements are exponent vectors `(e_1, …, e_m)` with `0 ≤ e_i < p`,
/// standing for `g_1^{e_1} ⋯ g_m^{e_m}`.
pub struct Collector<'a> {
    pres: &'a Presentation,
    budget: usize,
    power_letters: Vec<Vec<usize>>,
    conj_letters: Vec<Vec<Vec<usize>>>,
}

impl<'a> Collector<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        Self::with_budget(pres, DEFAULT_STEP_BUDGET)
    }

    pub fn with_budget(pres: &'a Presentation, budget: usize) -> Self {
        let m = pres.num_generators();
        let power_letters = pres
            .power_relations
            .iter()
            .map(|w| w.letters().collect())
            .collect();
        let conj_letters = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| match pres.conjugate_rhs(i, j) {
                        Some(w) => w.letters().collect(),
                        None => vec![j],
                    })
                    .collect()
            })
            .collect();
        Self {
            pres,
            budget,
            power_letters,
            conj_letters,
        }
    }

    /// Multiplies the normal form `exps` on the right by the letters of `word`.
    pub fn collect(&self, exps: &mut [u32], word: &[usize]) -> Result<()> {
        let p = self.pres.prime;
        let m = exps.len();
        let mut stack: Vec<usize> = word.iter().rev().copied().collect();
        let mut steps = 0usize;
        let mut pending: Vec<usize> = Vec::new();
        while let Some(k) = stack.pop() {
            steps += 1;
            if steps > self.budget {
                return Err(Error::CollectionBudget(self.budget));
            }
            // u·g_k = u_{≤k} · g_k · (u_{>k})^{g_k}
            pending.clear();
            let mut tail: Vec<usize> = Vec::new();
            for j in k + 1..m {
                for _ in 0..exps[j] {
                    tail.push(j);
                }
                exps[j] = 0;
            }
            exps[k] += 1;
            if exps[k] == p {
                exps[k] = 0;
                pending.extend_from_slice(&self.power_letters[k]);
            }
            for j in tail {
                pending.extend_from_slice(&self.conj_letters[k][j]);
            }
            stack.extend(pending.iter().rev());
        }
        Ok(())
    }
}

fn index_of(exps: &[u32], p: usize) -> usize {
    exps.iter().fold(0, |acc, &e| acc * p + e as usize)
}

fn exps_of(mut idx: usize, p: usize, m: usize) -> Vec<u32> {
    let mut v = vec![0u32; m];
    for slot in v.iter_mut().rev() {
        *slot = (idx % p) as u32;
        idx /= p;
    }
    v
}

/// Builds and validates the table of the group given by `pres`.
///
/// Element `i` is the normal form whose exponent vector spells `i` in base
/// `p` (first generator most significant), so the identity is `0`.
pub fn build_from_presentation(pres: &Presentation) -> Result<GroupTable> {
    let p = pres.prime as usize;
    let m = pres.num_generators();
    let n = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&v| v <= MAX_TABLE_ORDER));
    let n = n.ok_or_else(|| Error::Inconsistent(format!("order {p}^{m} exceeds the table limit")))?;
    let collector = Collector::new(pres);
    // right[x * m + k] = x · g_k
    let mut right = vec![0usize; n * m];
    for x in 0..n {
        for k in 0..m {
            let mut e = exps_of(x, p, m);
            collector.collect(&mut e, &[k])?;
            right[x * m + k] = index_of(&e, p);
        }
    }
    let letters: Vec<Vec<usize>> = (0..n)
        .map(|y| {
            exps_of(y, p, m)
                .iter()
                .enumerate()
                .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
                .collect()
        })
        .collect();
    let mut flat = vec![0usize; n * n];
    for x in 0..n {
        for (y, word) in letters.iter().enumerate() {
            flat[x * n + y] = word.iter().fold(x, |acc, &k| right[acc * m + k]);
        }
    }
    let table = GroupTable::from_table("pcp", n, flat).map_err(|e| {
        Error::Inconsistent(format!(
            "order shortfall: the {n} normal forms do not form a group ({e}); the presented group has order < {p}^{m}"
        ))
    })?;
    let report = validate_axioms(&table);
    if !report.all_ok() {
        let witness = report
            .failing_triple
            .map(|(a, b, c)| format!(" (first non-associative triple {a}, {b}, {c})"))
            .unwrap_or_default();
        return Err(Error::Inconsistent(format!(
            "order shortfall: collected multiplication on the {n} normal forms fails the group axioms{witness}; the presented group has order < {p}^{m}"
        )));
    }
    Ok(table)
}

/// Exponent vector of element `g` in a table built by [`build_from_presentation`].
pub fn normal_form(pres: &Presentation, g: Elem) -> Vec<u32> {
    exps_of(g, pres.prime as usize, pres.num_generators())
}
