//! Exhaustive checkers and the suite runner.
//!
//! Every check returns a [`CheckResult`]; errors inside a check become
//! [`Status::Error`] results instead of aborting a run. Results are sorted by
//! group id and then by [`CheckId`], so two runs over the same catalog differ
//! only in the timing fields.

mod checks;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GroupTable;
use crate::catalog::{Catalog, CatalogEntry, Filter};
use crate::error::{Error, Result};
use crate::predicates::GroupAnalysis;

pub use witness::{cube_identity_sides, SubgroupRef, Witness};

use checks::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum CheckId {
    Lemma1,
    Lemma2,
    Lemma3,
    Cube,
    Lemma4,
    Lemma5,
    Theorem6,
    Order81,
    Theorem7,
    GenMna,
    Regularity,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Lemma1,
        CheckId::Lemma2,
        CheckId::Lemma3,
        CheckId::Cube,
        CheckId::Lemma4,
        CheckId::Lemma5,
        CheckId::Theorem6,
        CheckId::Order81,
        CheckId::Theorem7,
        CheckId::GenMna,
        CheckId::Regularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Lemma1 => "lemma1",
            CheckId::Lemma2 => "lemma2",
            CheckId::Lemma3 => "lemma3",
            CheckId::Cube => "cube",
            CheckId::Lemma4 => "lemma4",
            CheckId::Lemma5 => "lemma5",
            CheckId::Theorem6 => "theorem6",
            CheckId::Order81 => "order81",
            CheckId::Theorem7 => "theorem7",
            CheckId::GenMna => "genmna",
            CheckId::Regularity => "regularity",
        }
    }
}

impl From<CheckId> for &'static str {
    fn from(c: CheckId) -> Self {
        c.name()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Catalog(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    /// The check could not be evaluated (e.g. enumeration bound exceeded).
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
            Status::Error => "error",
        }
    }
}

/// Scalar or structured evidence value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(u64),
    Text(String),
    Subgroups(Vec<SubgroupRef>),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Text(s) => f.write_str(s),
            Value::Subgroups(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|s| format!("<{:?}>:{}", s.generators, s.order))
                    .collect();
                f.write_str(&parts.join(" x "))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: CheckId,
    pub group_id: String,
    pub status: Status,
    pub counterexample: Option<Witness>,
    /// Supporting evidence for a `Pass`, e.g. a non-isolated subgroup.
    pub witness: Option<Witness>,
    pub evidence: BTreeMap<&'static str, Value>,
    /// Configurations examined by the scan.
    pub configurations: u64,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckResult {
    fn from_outcome(check_id: CheckId, group_id: &str, r: Result<Outcome>, started: Instant) -> Self {
        let elapsed_ms = started.elapsed().as_millis() as u64;
        match r {
            Ok(o) => Self {
                check_id,
                group_id: group_id.to_string(),
                status: o.status,
                counterexample: o.counterexample,
                witness: o.witness,
                evidence: o.evidence,
                configurations: o.configurations,
                error: None,
                elapsed_ms,
            },
            Err(e) => Self {
                check_id,
                group_id: group_id.to_string(),
                status: Status::Error,
                counterexample: None,
                witness: None,
                evidence: BTreeMap::new(),
                configurations: 0,
                error: Some(e.to_string()),
                elapsed_ms,
            },
        }
    }
}

/// Runs one check on a catalog entry, reusing `analysis` for lattice data.
pub fn run_check(check: CheckId, entry: &CatalogEntry, analysis: &GroupAnalysis<'_>) -> CheckResult {
    let started = Instant::now();
    let r = match check {
        CheckId::Lemma1 => checks::lemma1(analysis),
        CheckId::Lemma2 => checks::lemma2(analysis),
        CheckId::Lemma3 => checks::lemma3(analysis),
        CheckId::Cube => checks::cube(analysis),
        CheckId::Lemma4 => checks::lemma4(analysis),
        CheckId::Lemma5 => checks::lemma5(analysis),
        CheckId::Theorem6 => checks::theorem6(analysis),
        CheckId::Order81 => checks::order81(entry, analysis),
        CheckId::Theorem7 => checks::theorem7(analysis),
        CheckId::GenMna => checks::genmna(analysis),
        CheckId::Regularity => checks::regularity(analysis),
    };
    CheckResult::from_outcome(check, &entry.id, r, started)
}

/// Runs one check on a bare table; the group id is the table name and tags
/// are recomputed.
pub fn check_group(check: CheckId, g: &GroupTable) -> CheckResult {
    let started = Instant::now();
    let entry = crate::catalog::compute_tags(g)
        .and_then(|tags| CatalogEntry::from_parts_unchecked(g.name(), g.clone(), tags));
    match entry {
        Ok(entry) => run_check(check, &entry, &GroupAnalysis::new(&entry.table)),
        Err(e) => CheckResult::from_outcome(check, g.name(), Err(e), started),
    }
}

pub fn check_lemma1(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Lemma1, g)
}

pub fn check_lemma2(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Lemma2, g)
}

pub fn check_lemma3(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Lemma3, g)
}

pub fn check_cube_identity(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Cube, g)
}

pub fn check_lemma4(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Lemma4, g)
}

pub fn check_lemma5(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Lemma5, g)
}

pub fn check_theorem6(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Theorem6, g)
}

pub fn check_theorem7(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Theorem7, g)
}

pub fn check_generated_by_mna(g: &GroupTable) -> CheckResult {
    check_group(CheckId::GenMna, g)
}

pub fn check_regularity_class(g: &GroupTable) -> CheckResult {
    check_group(CheckId::Regularity, g)
}

/// Catalog-wide form of the order-81 check: every order-81 entry that is of
/// maximal class, by tag or by recomputation, must have exponent above 3.
/// The first failing entry's counterexample is reported.
pub fn check_order81_maximal_class_exponent(catalog: &Catalog) -> Result<CheckResult> {
    let started = Instant::now();
    let entries = catalog.list_entries(&Filter { order: Some(81), ..Filter::default() });
    if entries.is_empty() {
        return Err(Error::CatalogMissingOrder(81));
    }
    let mut scanned = 0u64;
    let mut failure = None;
    for e in &entries {
        let r = run_check(CheckId::Order81, e, &GroupAnalysis::new(&e.table));
        match r.status {
            Status::Pass => scanned += 1,
            Status::NotApplicable => {}
            _ => {
                failure = Some(r);
                break;
            }
        }
    }
    let mut result = match failure {
        Some(mut f) => {
            f.group_id = "catalog:o81".into();
            f
        }
        None => CheckResult::from_outcome(
            CheckId::Order81,
            "catalog:o81",
            Ok(Outcome {
                status: Status::Pass,
                counterexample: None,
                witness: None,
                evidence: BTreeMap::new(),
                configurations: 0,
            }),
            started,
        ),
    };
    result.configurations = scanned + u64::from(result.status == Status::Fail);
    result.evidence.insert("entries", Value::Int(entries.len() as u64));
    result.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(result)
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub filter: Filter,
    pub checks: Vec<CheckId>,
    /// Lattice enumeration bound; `None` uses `p^5` per group.
    pub bound: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            filter: Filter::default(),
            checks: CheckId::ALL.to_vec(),
            bound: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunInfo {
    pub filter: Filter,
    pub checks: Vec<CheckId>,
    pub bound: Option<usize>,
    pub groups: usize,
    pub determinism: &'static str,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub error: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        self.total += 1;
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
            Status::Error => self.error += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    #[serde(flatten)]
    pub overall: Counts,
    pub by_check: BTreeMap<&'static str, Counts>,
}

impl Summary {
    pub fn tally(results: &[CheckResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            s.overall.add(r.status);
            s.by_check.entry(r.check_id.name()).or_default().add(r.status);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub run: RunInfo,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    /// Zero `Fail` and zero `Error` results.
    pub fn is_clean(&self) -> bool {
        self.summary.overall.fail == 0 && self.summary.overall.error == 0
    }
}

pub const DETERMINISM_NOTE: &str =
    "no randomness; results sorted by (group, check); only elapsed_ms and wall_ms vary between runs";

/// Runs every selected check on every matching entry. Groups are evaluated
/// in parallel; each group's lattice is computed once and shared.
pub fn run_suite(catalog: &Catalog, config: &SuiteConfig) -> Report {
    let started = Instant::now();
    let entries = catalog.list_entries(&config.filter);
    let mut checks = config.checks.clone();
    checks.sort();
    checks.dedup();
    let mut results: Vec<CheckResult> = entries
        .par_iter()
        .flat_map_iter(|e| {
            let analysis = match config.bound {
                Some(b) => GroupAnalysis::with_bound(&e.table, b),
                None => GroupAnalysis::new(&e.table),
            };
            checks
                .iter()
                .map(|&c| run_check(c, e, &analysis))
                .collect::<Vec<_>>()
        })
        .collect();
    results.sort_by(|a, b| (&a.group_id, a.check_id).cmp(&(&b.group_id, b.check_id)));
    let summary = Summary::tally(&results);
    Report {
        run: RunInfo {
            filter: config.filter.clone(),
            checks,
            bound: config.bound,
            groups: entries.len(),
            determinism: DETERMINISM_NOTE,
            wall_ms: started.elapsed().as_millis() as u64,
        },
        results,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_from_permutations, build_from_presentation, parse_pcp};

    fn pcp(name: &str, text: &str) -> GroupTable {
        let mut g = build_from_presentation(&parse_pcp(text).unwrap()).unwrap();
        g.set_name(name);
        g
    }

    const S27: &str = "p=3; gens a,b,c; b^a = b*c;";
    const M27: &str = "p=3; gens a,b,c; a^3 = c; b^a = b*c^2;";
    const M27XC3: &str = "p=3; gens a,b,c,d; a^3 = c; b^a = b*c^2;";

    #[test]
    fn check_names_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        }
        assert!("nosuch".parse::<CheckId>().is_err());
    }

    #[test]
    fn lemma1_not_applicable_off_p2() {
        assert_eq!(check_lemma1(&pcp("s27", S27)).status, Status::NotApplicable);
    }

    #[test]
    fn lemma1_on_d8() {
        let d8 = build_from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], 10).unwrap();
        let r = check_lemma1(&d8);
        assert_eq!(r.status, Status::Pass);
        assert!(matches!(r.evidence["isolated_proper_subgroups"], Value::Int(n) if n > 0));
    }

    #[test]
    fn lemma2_on_s27() {
        let r = check_lemma2(&pcp("s27", S27));
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.evidence["qualifying_maximal_subgroups"], Value::Int(4));
    }

    #[test]
    fn cube_identity_on_s27() {
        let r = check_cube_identity(&pcp("s27", S27));
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn lemma4_on_m27() {
        let r = check_lemma4(&pcp("m27", M27));
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.evidence["all_mna_sp3"], Value::Bool(false));
        assert_eq!(r.evidence["structure_holds"], Value::Bool(false));
        assert_eq!(r.evidence["hughes_order"], Value::Int(27));
    }

    #[test]
    fn lemma5_not_applicable_for_p3() {
        assert_eq!(check_lemma5(&pcp("m27xc3", M27XC3)).status, Status::NotApplicable);
    }

    #[test]
    fn theorem6_and_7_on_m27xc3() {
        let g = pcp("m27xc3", M27XC3);
        let r6 = check_theorem6(&g);
        assert_eq!(r6.status, Status::Pass);
        assert_eq!(r6.evidence["all_mna_sp3_p_ge_5"], Value::Bool(false));
        let r7 = check_theorem7(&g);
        assert_eq!(r7.status, Status::Pass);
        let w = r7.witness.expect("non-isolated MNA witness");
        assert!(w.reverify(&g).unwrap());
    }

    #[test]
    fn theorem6_not_applicable_to_exponent_p() {
        let g = pcp("s27xc3", "p=3; gens a,b,c,d; b^a = b*c;");
        assert_eq!(check_theorem6(&g).status, Status::NotApplicable);
        assert_eq!(check_theorem7(&g).status, Status::Pass);
    }

    #[test]
    fn regularity_cases() {
        assert_eq!(check_regularity_class(&GroupTable::cyclic(9).unwrap()).status, Status::Pass);
        assert_eq!(check_regularity_class(&pcp("s27", S27)).status, Status::Pass);
        let d8 = build_from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], 10).unwrap();
        assert_eq!(check_regularity_class(&d8).status, Status::NotApplicable);
    }

    #[test]
    fn generated_by_mna() {
        let g = pcp("s27xc3", "p=3; gens a,b,c,d; b^a = b*c;");
        assert_eq!(check_generated_by_mna(&g).status, Status::Pass);
        assert_eq!(check_generated_by_mna(&GroupTable::cyclic(9).unwrap()).status, Status::NotApplicable);
    }

    #[test]
    fn bound_errors_become_error_results() {
        let g = pcp("s27", S27);
        let entry = CatalogEntry::from_parts_unchecked("s27", g.clone(), Default::default()).unwrap();
        let an = GroupAnalysis::with_bound(&entry.table, 9);
        let r = run_check(CheckId::Lemma3, &entry, &an);
        assert_eq!(r.status, Status::Error);
        assert!(r.error.unwrap().contains("bound"));
    }

    #[test]
    fn empty_filter_match_gives_empty_report() {
        let report = run_suite(&Catalog::default(), &SuiteConfig::default());
        assert!(report.results.is_empty());
        assert_eq!(report.summary.overall, Counts::default());
        assert!(report.is_clean());
    }
}
