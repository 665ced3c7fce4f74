//! `pgv`: query the catalog, inspect groups and run the exhaustive checks.
//!
//! Exit codes: 0 success, 1 a check failed or errored (or a source file
//! failed to build), 2 usage or configuration error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgv_core::catalog::{fingerprint, Catalog, Filter, Tag, CATALOG_ENV};
use pgv_core::predicates::{hughes_subgroup, is_isolated, GroupAnalysis};
use pgv_core::presentation::{build_from_presentation, parse_pcp, validate_axioms};
use pgv_core::verifier::{run_suite, CheckId, SuiteConfig};
use pgv_core::Elem;

use output::Format;

#[derive(Parser)]
#[command(name = "pgv", version, about = "Exhaustive checks over a catalog of small p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks over (a filtered part of) the catalog.
    Verify(VerifyArgs),
    /// List catalog entries.
    List(ListArgs),
    /// Print structural data about one catalog group.
    Group(GroupArgs),
    /// Test whether a subgroup, given by generator indices, is isolated.
    Isolated(IsolatedArgs),
    /// Build and validate a `.pcp` presentation file and print its fingerprint.
    Parse(ParseArgs),
}

#[derive(Args)]
struct CatalogArgs {
    /// Catalog directory (holds manifest.txt).
    #[arg(long, env = CATALOG_ENV)]
    catalog: Option<PathBuf>,
    /// Also load the optional order-32/243 sample.
    #[arg(long)]
    extended: bool,
}

impl CatalogArgs {
    fn load(&self) -> Result<Catalog, String> {
        let dir = self.catalog.clone().unwrap_or_else(Catalog::default_dir);
        Catalog::load(&dir, self.extended).map_err(|e| format!("cannot load catalog from {}: {e}", dir.display()))
    }
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    prime: Option<u32>,
    #[arg(long, value_parser = parse_tag)]
    tag: Option<Tag>,
}

impl FilterArgs {
    fn filter(&self) -> Filter {
        Filter { prime: self.prime, order: self.order, tag: self.tag }
    }
}

fn parse_tag(s: &str) -> Result<Tag, String> {
    s.parse().map_err(|e: pgv_core::Error| e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Lemma1,
    Lemma2,
    Lemma3,
    Cube,
    Lemma4,
    Lemma5,
    Theorem6,
    Order81,
    Theorem7,
    Genmna,
    Regularity,
    All,
}

impl CheckArg {
    fn ids(self) -> Vec<CheckId> {
        let id = match self {
            CheckArg::All => return CheckId::ALL.to_vec(),
            CheckArg::Lemma1 => CheckId::Lemma1,
            CheckArg::Lemma2 => CheckId::Lemma2,
            CheckArg::Lemma3 => CheckId::Lemma3,
            CheckArg::Cube => CheckId::Cube,
            CheckArg::Lemma4 => CheckId::Lemma4,
            CheckArg::Lemma5 => CheckId::Lemma5,
            CheckArg::Theorem6 => CheckId::Theorem6,
            CheckArg::Order81 => CheckId::Order81,
            CheckArg::Theorem7 => CheckId::Theorem7,
            CheckArg::Genmna => CheckId::GenMna,
            CheckArg::Regularity => CheckId::Regularity,
        };
        vec![id]
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    filter: FilterArgs,
    /// Checks to run (repeatable); defaults to all.
    #[arg(long = "check", value_enum)]
    checks: Vec<CheckArg>,
    /// Largest subgroup order enumerated; must cover every selected group.
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ListArgs {
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    filter: FilterArgs,
}

#[derive(Args)]
struct GroupArgs {
    #[command(flatten)]
    catalog: CatalogArgs,
    #[arg(long)]
    id: String,
    /// Also list every element index with its order.
    #[arg(long)]
    elements: bool,
}

#[derive(Args)]
struct IsolatedArgs {
    #[command(flatten)]
    catalog: CatalogArgs,
    #[arg(long)]
    id: String,
    /// Generator indices of the subgroup, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<Elem>,
}

#[derive(Args)]
struct ParseArgs {
    path: PathBuf,
}

enum Failure {
    /// Exit 1.
    Checks(String),
    /// Exit 2.
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::List(a) => cmd_list(a),
        Command::Group(a) => cmd_group(a),
        Command::Isolated(a) => cmd_isolated(a),
        Command::Parse(a) => cmd_parse(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let catalog = a.catalog.load().map_err(Failure::Usage)?;
    let filter = a.filter.filter();
    let mut checks: Vec<CheckId> = if a.checks.is_empty() {
        CheckId::ALL.to_vec()
    } else {
        a.checks.iter().flat_map(|c| c.ids()).collect()
    };
    checks.sort();
    checks.dedup();
    if let Some(bound) = a.bound {
        let largest = catalog.list_entries(&filter).iter().map(|e| e.order()).max().unwrap_or(0);
        if bound < largest {
            return Err(Failure::Usage(format!(
                "--bound {bound} is below the largest selected group order {largest}"
            )));
        }
    }
    let config = SuiteConfig { filter, checks, bound: a.bound };
    let report = run_suite(&catalog, &config);
    let text = output::render_report(&report, a.format);
    match &a.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if report.is_clean() {
        Ok(())
    } else {
        let s = &report.summary.overall;
        Err(Failure::Checks(format!("{} failed, {} errored", s.fail, s.error)))
    }
}

fn cmd_list(a: &ListArgs) -> Result<(), Failure> {
    let catalog = a.catalog.load().map_err(Failure::Usage)?;
    for e in catalog.list_entries(&a.filter.filter()) {
        let tags = if e.tags.is_empty() { "-".to_string() } else { e.tag_list() };
        println!(
            "{}\t{}\t{}\t{}",
            e.id,
            e.order(),
            tags,
            e.external_ref.as_deref().unwrap_or("")
        );
    }
    Ok(())
}

fn cmd_group(a: &GroupArgs) -> Result<(), Failure> {
    let catalog = a.catalog.load().map_err(Failure::Usage)?;
    let entry = catalog.get(&a.id).map_err(|e| Failure::Usage(e.to_string()))?;
    let g = &entry.table;
    let whole = g.whole();
    let internal = |e: pgv_core::Error| Failure::Checks(format!("{}: {e}", a.id));
    let analysis = GroupAnalysis::new(g);
    let fp = &entry.fingerprint;
    println!("id\t{}", entry.id);
    println!("order\t{}", g.order());
    println!("exponent\t{}", fp.exponent);
    println!("class\t{}", fp.nilpotency_class);
    println!("center\t{}", fp.center_order);
    println!("derived\t{}", fp.derived_order);
    println!("frattini\t{}", whole.frattini().map_err(internal)?.order());
    println!("hughes\t{}", hughes_subgroup(&whole).map_err(internal)?.order());
    println!("maximal_class\t{}", g.log_order() >= 3 && whole.is_maximal_class().map_err(internal)?);
    println!("regular\t{}", whole.is_regular_pgroup().map_err(internal)?);
    println!("mna_count\t{}", analysis.minimal_nonabelian().map_err(internal)?.len());
    println!("tags\t{}", if entry.tags.is_empty() { "-".into() } else { entry.tag_list() });
    println!("abelianization\t{:?}", fp.abelianization);
    if a.elements {
        for x in 0..g.order() {
            println!("element\t{x}\t{}", g.order_of(x));
        }
    }
    Ok(())
}

fn cmd_isolated(a: &IsolatedArgs) -> Result<(), Failure> {
    let catalog = a.catalog.load().map_err(Failure::Usage)?;
    let g = catalog.get_group(&a.id).map_err(|e| Failure::Usage(e.to_string()))?;
    let h = g.closure(&a.gens).map_err(|e| Failure::Usage(e.to_string()))?;
    let verdict = is_isolated(&h, &g.whole()).map_err(|e| Failure::Checks(e.to_string()))?;
    println!("subgroup order {} generated by {:?}", h.order(), a.gens);
    match verdict.witness() {
        None => println!("isolated"),
        Some(x) => {
            let meet = g.closure(&[x]).and_then(|c| c.intersection(&h)).map_err(|e| Failure::Checks(e.to_string()))?;
            println!("not isolated");
            println!("witness {x} (order {}); <{x}> meets the subgroup in {} elements", g.order_of(x), meet.order());
        }
    }
    Ok(())
}

fn cmd_parse(a: &ParseArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&a.path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", a.path.display())))?;
    let path = a.path.display();
    let pres = parse_pcp(&text).map_err(|e| Failure::Checks(format!("{path}:{e}")))?;
    let g = build_from_presentation(&pres).map_err(|e| Failure::Checks(format!("{path}: {e}")))?;
    let axioms = validate_axioms(&g);
    if !axioms.all_ok() {
        return Err(Failure::Checks(format!("{path}: axiom check failed: {axioms:?}")));
    }
    let fp = fingerprint(&g).map_err(|e| Failure::Checks(format!("{path}: {e}")))?;
    println!("order\t{}", fp.order);
    println!("exponent\t{}", fp.exponent);
    println!("center\t{}", fp.center_order);
    println!("derived\t{}", fp.derived_order);
    println!("class\t{}", fp.nilpotency_class);
    println!("abelianization\t{:?}", fp.abelianization);
    println!("element_orders\t{:?}", fp.order_histogram);
    println!("class_sizes\t{:?}", fp.class_size_histogram);
    Ok(())
}
