//! Shipped small p-groups: manifest loading, tags, lookup and the search for
//! groups whose minimal nonabelian subgroups are all `S(p³)`.
//!
//! A catalog directory holds `manifest.txt` (and optionally
//! `manifest-extended.txt`) plus the `.pcp` / `.perm` sources it names. Each
//! manifest line is
//!
//! ```text
//! <id> <path> <order> <tag,tag,...|-> [external reference text...]
//! ```
//!
//! with `#` starting a whole-line comment.

mod fingerprint;
mod iso;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{Elem, GroupTable};
use crate::error::{Error, Result};
use crate::predicates::{hughes_subgroup, GroupAnalysis};
use crate::presentation::{
    build_from_permutations, build_from_presentation, parse_pcp, validate_axioms, Presentation,
};

pub use fingerprint::{abelian_invariants, conjugacy_classes, fingerprint, Fingerprint};
pub use iso::{are_isomorphic, verify_isomorphism, ISOMORPHISM_ORDER_LIMIT};

/// Environment variable overriding the default catalog directory.
pub const CATALOG_ENV: &str = "PGV_CATALOG";
pub const MANIFEST: &str = "manifest.txt";
pub const EXTENDED_MANIFEST: &str = "manifest-extended.txt";

/// Largest permutation group closure accepted from a `.perm` source.
const PERM_ORDER_BOUND: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Abelian,
    MaximalClass,
    ExpP,
    MinimalNonabelian,
}

impl Tag {
    pub const ALL: [Tag; 4] = [Tag::Abelian, Tag::MaximalClass, Tag::ExpP, Tag::MinimalNonabelian];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Abelian => "abelian",
            Tag::MaximalClass => "maximal-class",
            Tag::ExpP => "exp-p",
            Tag::MinimalNonabelian => "minimal-nonabelian",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Catalog(format!("unknown tag {s:?}")))
    }
}

/// Tags recomputed from the table alone.
pub fn compute_tags(g: &GroupTable) -> Result<BTreeSet<Tag>> {
    let whole = g.whole();
    let mut tags = BTreeSet::new();
    if g.is_abelian() {
        tags.insert(Tag::Abelian);
    }
    if let Some(p) = g.prime() {
        if g.exponent() == p as usize {
            tags.insert(Tag::ExpP);
        }
        if g.log_order() >= 3 && whole.is_maximal_class()? {
            tags.insert(Tag::MaximalClass);
        }
        if GroupAnalysis::with_bound(g, g.order()).is_minimal_nonabelian()? {
            tags.insert(Tag::MinimalNonabelian);
        }
    }
    Ok(tags)
}

#[derive(Debug, Clone)]
pub enum Source {
    Presentation(Presentation),
    /// Generators as images of `0..degree`, composed left to right.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    /// A table supplied directly (fixtures and derived groups).
    Table,
}

impl Source {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Presentation(_) => "pcp",
            Source::Permutations { .. } => "perm",
            Source::Table => "table",
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        match self {
            Source::Presentation(p) => build_from_presentation(p),
            Source::Permutations { degree, generators } => {
                build_from_permutations(*degree, generators, PERM_ORDER_BOUND)
            }
            Source::Table => Err(Error::Catalog("a table source cannot be rebuilt".into())),
        }
    }
}

/// Parses a `.perm` source: a `degree <n>` line, then one generator per line
/// as whitespace-separated images of `0..n`.
pub fn parse_permutations(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: lineno + 1,
            column: 1,
            message,
        };
        if let Some(rest) = line.strip_prefix("degree") {
            let n = rest.trim().parse().map_err(|_| err(format!("bad degree {rest:?}")))?;
            degree = Some(n);
            continue;
        }
        if degree.is_none() {
            return Err(err("expected `degree <n>` before generators".into()));
        }
        let perm = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad image {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        gens.push(perm);
    }
    let degree = degree.ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "missing `degree` line".into(),
    })?;
    Ok((degree, gens))
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub source: Source,
    pub path: Option<PathBuf>,
    pub declared_order: usize,
    pub tags: BTreeSet<Tag>,
    pub external_ref: Option<String>,
    pub extended: bool,
    pub table: GroupTable,
    pub fingerprint: Fingerprint,
}

impl CatalogEntry {
    /// Builds, validates, fingerprints and tags a group.
    ///
    /// With `tags = None` the tags are computed; otherwise they are checked
    /// against the recomputed set.
    pub fn new(
        id: impl Into<String>,
        source: Source,
        declared_order: usize,
        tags: Option<BTreeSet<Tag>>,
    ) -> Result<Self> {
        let table = source.build()?;
        Self::with_table(id, source, table, declared_order, tags)
    }

    fn with_table(
        id: impl Into<String>,
        source: Source,
        mut table: GroupTable,
        declared_order: usize,
        tags: Option<BTreeSet<Tag>>,
    ) -> Result<Self> {
        let id = id.into();
        if table.order() != declared_order {
            return Err(Error::Catalog(format!(
                "{id}: declared order {declared_order}, built {}",
                table.order()
            )));
        }
        // presentation tables are validated while being built
        let report = match source {
            Source::Presentation(_) => None,
            _ => Some(validate_axioms(&table)),
        };
        if let Some(report) = report.filter(|r| !r.all_ok()) {
            return Err(Error::Catalog(format!("{id}: table fails validation: {report:?}")));
        }
        if table.prime().is_none() && table.order() > 1 {
            return Err(Error::NotPGroup(table.order()));
        }
        table.set_name(id.clone());
        let computed = compute_tags(&table)?;
        if let Some(declared) = &tags {
            if *declared != computed {
                return Err(Error::Catalog(format!(
                    "{id}: declared tags [{}] but the table has [{}]",
                    join_tags(declared),
                    join_tags(&computed)
                )));
            }
        }
        let fingerprint = fingerprint(&table)?;
        Ok(Self {
            id,
            source,
            path: None,
            declared_order,
            tags: computed,
            external_ref: None,
            extended: false,
            table,
            fingerprint,
        })
    }

    /// An entry around an existing table whose tags are taken on trust.
    /// Intended for test fixtures, e.g. deliberately mis-tagged entries.
    pub fn from_parts_unchecked(id: impl Into<String>, table: GroupTable, tags: BTreeSet<Tag>) -> Result<Self> {
        let id = id.into();
        let fingerprint = fingerprint(&table)?;
        Ok(Self {
            declared_order: table.order(),
            id,
            source: Source::Table,
            path: None,
            tags,
            external_ref: None,
            extended: false,
            table,
            fingerprint,
        })
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn prime(&self) -> Option<u32> {
        self.table.prime()
    }

    pub fn has_tag(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }

    pub fn tag_list(&self) -> String {
        join_tags(&self.tags)
    }
}

fn join_tags(tags: &BTreeSet<Tag>) -> String {
    tags.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Filter {
    pub prime: Option<u32>,
    pub order: Option<usize>,
    pub tag: Option<Tag>,
}

impl Filter {
    pub fn matches(&self, e: &CatalogEntry) -> bool {
        self.prime.is_none_or(|p| e.prime() == Some(p))
            && self.order.is_none_or(|n| e.order() == n)
            && self.tag.is_none_or(|t| e.has_tag(t))
    }
}

/// Ids sort by group order first, then lexicographically.
fn id_key(e: &CatalogEntry) -> (usize, &str) {
    (e.order(), e.id.as_str())
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

static BUILTIN: OnceLock<Result<Catalog>> = OnceLock::new();

impl Catalog {
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CATALOG_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/catalog")))
    }

    /// The base catalog from [`Catalog::default_dir`], loaded once per process.
    pub fn builtin() -> Result<&'static Catalog> {
        BUILTIN
            .get_or_init(|| Catalog::load(Catalog::default_dir(), false))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn load(dir: impl AsRef<Path>, extended: bool) -> Result<Self> {
        let dir = dir.as_ref();
        let mut entries = load_manifest(dir, &dir.join(MANIFEST), false)?;
        if extended {
            entries.extend(load_manifest(dir, &dir.join(EXTENDED_MANIFEST), true)?);
        }
        Self::from_entries(entries)
    }

    /// Assembles a catalog from prepared entries; ids must be unique.
    pub fn from_entries(mut entries: Vec<CatalogEntry>) -> Result<Self> {
        entries.sort_by(|a, b| id_key(a).cmp(&id_key(b)));
        for w in entries.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Catalog(format!("duplicate id {}", w[0].id)));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn list_entries(&self, filter: &Filter) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| filter.matches(e)).collect()
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn get_group(&self, id: &str) -> Result<&GroupTable> {
        Ok(&self.get(id)?.table)
    }

    /// Entries `G` with `p ≤ |G| ≤ max_order`, `exp(G) > p`, `G` nonabelian
    /// and every minimal nonabelian subgroup of exponent `p` and order `p³`.
    pub fn find_lemma4_witnesses(&self, p: u32, max_order: usize) -> Result<Vec<Lemma4Witness<'_>>> {
        let mut out = Vec::new();
        for e in &self.entries {
            if e.prime() != Some(p) || e.order() > max_order {
                continue;
            }
            if let Some(w) = lemma4_witness(e)? {
                out.push(w);
            }
        }
        Ok(out)
    }
}

/// A catalog group all of whose minimal nonabelian subgroups are `S(p³)`
/// while `exp(G) > p`, with its Hughes-subgroup data.
#[derive(Debug, Clone)]
pub struct Lemma4Witness<'c> {
    pub entry: &'c CatalogEntry,
    /// Members of `H_p(G)`.
    pub hughes: Vec<Elem>,
    pub hughes_abelian: bool,
    pub hughes_index: usize,
    /// Least element of order `p` outside `H_p(G)`, if any.
    pub complement: Option<Elem>,
}

fn lemma4_witness(e: &CatalogEntry) -> Result<Option<Lemma4Witness<'_>>> {
    let g = &e.table;
    let Some(p) = g.prime() else { return Ok(None) };
    let p = p as usize;
    if g.is_abelian() || g.exponent() == p {
        return Ok(None);
    }
    let analysis = GroupAnalysis::new(g);
    if !analysis.mna_report()?.all_s_p3() {
        return Ok(None);
    }
    let h = hughes_subgroup(&g.whole())?;
    let complement = (0..g.order()).find(|&x| !h.contains(x) && g.order_of(x) == p);
    Ok(Some(Lemma4Witness {
        entry: e,
        hughes_abelian: h.is_abelian(),
        hughes_index: g.order() / h.order(),
        hughes: h.to_vec(),
        complement,
    }))
}

fn load_manifest(dir: &Path, manifest: &Path, extended: bool) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(manifest).map_err(|e| Error::Io {
        path: manifest.display().to_string(),
        message: e.to_string(),
    })?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        // ids contain '#', so only whole-line comments are recognised
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let at = |m: String| Error::Catalog(format!("{}:{}: {m}", manifest.display(), lineno + 1));
        if fields.len() < 4 {
            return Err(at("expected `<id> <path> <order> <tags>`".into()));
        }
        let (id, rel, order, tags) = (fields[0], fields[1], fields[2], fields[3]);
        let order: usize = order.parse().map_err(|_| at(format!("bad order {order:?}")))?;
        let tags: BTreeSet<Tag> = if tags == "-" {
            BTreeSet::new()
        } else {
            tags.split(',').map(str::parse).collect::<Result<_>>().map_err(|e| at(e.to_string()))?
        };
        let path = dir.join(rel);
        let src_text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let source = match path.extension().and_then(|s| s.to_str()) {
            Some("pcp") => Source::Presentation(parse_pcp(&src_text)?),
            Some("perm") => {
                let (degree, generators) = parse_permutations(&src_text)?;
                Source::Permutations { degree, generators }
            }
            _ => return Err(at(format!("unknown source type {rel:?}"))),
        };
        let mut entry = CatalogEntry::new(id, source, order, Some(tags)).map_err(|e| at(e.to_string()))?;
        entry.path = Some(path);
        entry.extended = extended;
        let note = fields[4..].join(" ");
        entry.external_ref = (!note.is_empty()).then_some(note);
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in Tag::ALL {
            assert_eq!(t.as_str().parse::<Tag>().unwrap(), t);
        }
        assert!("regular".parse::<Tag>().is_err());
    }

    #[test]
    fn computed_tags_of_small_groups() {
        let s27 = build_from_presentation(&parse_pcp("p=3; gens a,b,c; b^a = b*c;").unwrap()).unwrap();
        let tags = compute_tags(&s27).unwrap();
        assert_eq!(
            tags,
            BTreeSet::from([Tag::MaximalClass, Tag::ExpP, Tag::MinimalNonabelian])
        );
        let c9 = GroupTable::cyclic(9).unwrap();
        assert_eq!(compute_tags(&c9).unwrap(), BTreeSet::from([Tag::Abelian]));
    }

    #[test]
    fn wrong_declared_tags_are_rejected() {
        let src = Source::Presentation(parse_pcp("p=3; gens a,b;").unwrap());
        let err = CatalogEntry::new("o9#x", src, 9, Some(BTreeSet::from([Tag::ExpP]))).unwrap_err();
        assert!(err.to_string().contains("declared tags"), "{err}");
    }

    #[test]
    fn declared_order_is_checked() {
        let src = Source::Presentation(parse_pcp("p=3; gens a,b;").unwrap());
        assert!(CatalogEntry::new("o27#x", src, 27, None).is_err());
    }

    #[test]
    fn permutation_source_parsing() {
        let (deg, gens) = parse_permutations("# D8\ndegree 4\n1 2 3 0\n0 3 2 1 # reflection\n").unwrap();
        assert_eq!(deg, 4);
        assert_eq!(gens, vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]);
        assert!(parse_permutations("1 0\n").is_err());
    }

    #[test]
    fn filter_and_lookup() {
        let mk = |id: &str, text: &str, n| {
            CatalogEntry::new(id, Source::Presentation(parse_pcp(text).unwrap()), n, None).unwrap()
        };
        let cat = Catalog::from_entries(vec![
            mk("o27#b", "p=3; gens a,b,c; b^a = b*c;", 27),
            mk("o9#a", "p=3; gens a,b;", 9),
            mk("o27#a", "p=3; gens a,b,c;", 27),
        ])
        .unwrap();
        let ids: Vec<_> = cat.entries().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["o9#a", "o27#a", "o27#b"]);
        let f = Filter { order: Some(27), tag: Some(Tag::Abelian), ..Filter::default() };
        assert_eq!(cat.list_entries(&f).len(), 1);
        assert!(matches!(cat.get_group("o8#Q8"), Err(Error::UnknownId(_))));
    }
}
