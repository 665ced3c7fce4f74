use std::fmt::Write;

use clap::ValueEnum;
use pgv_core::verifier::{CheckResult, Report, Witness};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Tsv => tsv(report),
        Format::Text => text(report),
    }
}

fn one_line(v: &Option<Witness>) -> String {
    v.as_ref()
        .map(|w| serde_json::to_string(w).expect("witness serializes"))
        .unwrap_or_default()
}

fn evidence(r: &CheckResult) -> String {
    r.evidence
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn tsv(report: &Report) -> String {
    let mut out = String::from("group\tcheck\tstatus\tconfigurations\tevidence\tcounterexample\twitness\terror\n");
    for r in &report.results {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.group_id,
            r.check_id,
            r.status.name(),
            r.configurations,
            evidence(r),
            one_line(&r.counterexample),
            one_line(&r.witness),
            r.error.as_deref().unwrap_or(""),
        );
    }
    out
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    let mut current = "";
    for r in &report.results {
        if r.group_id != current {
            current = &r.group_id;
            let _ = writeln!(out, "{current}");
        }
        let _ = write!(out, "  {:<11} {:<14}", r.check_id.name(), r.status.name());
        let ev = evidence(r);
        if !ev.is_empty() {
            let _ = write!(out, " {ev}");
        }
        let _ = writeln!(out);
        if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "      counterexample: {}", serde_json::to_string(c).expect("serializes"));
        }
        if let Some(e) = &r.error {
            let _ = writeln!(out, "      error: {e}");
        }
    }
    let s = &report.summary.overall;
    let _ = writeln!(
        out,
        "{} results over {} groups: {} pass, {} fail, {} not applicable, {} error ({} ms)",
        s.total, report.run.groups, s.pass, s.fail, s.not_applicable, s.error, report.run.wall_ms
    );
    out
}
