use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pgv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgv"))
        .args(args)
        .env_remove("PGV_CATALOG")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pgv-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/catalog")
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_ms");
            m.remove("wall_ms");
            m.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn verify_json_order_27() {
    let o = pgv(&["verify", "--order", "27", "--check", "lemma3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 5);
    assert!(results.iter().all(|r| r["check_id"] == "lemma3"));
    assert_eq!(v["run"]["groups"], 5);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn verify_tsv_has_one_row_per_result() {
    let o = pgv(&["verify", "--prime", "2", "--check", "lemma1", "--check", "genmna", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("group\tcheck\tstatus"));
    assert_eq!(lines.len(), 1 + 2 * 19);
    assert!(!out.contains("\tfail\t"));
}

#[test]
fn verify_writes_report_file() {
    let path = scratch("out").join("report.json");
    let o = pgv(&["verify", "--order", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 5 * 11);
}

#[test]
fn verify_output_is_deterministic() {
    let run = || {
        let o = pgv(&["verify", "--order", "81"]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        strip_timing(&mut v);
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pgv(&["verify", "--check", "nosuch"]).status.code(), Some(2));
    assert_eq!(pgv(&["verify", "--order", "16", "--bound", "8"]).status.code(), Some(2));
    assert_eq!(pgv(&["group", "--id", "o8#nope"]).status.code(), Some(2));
    assert_eq!(pgv(&["list", "--tag", "squishy"]).status.code(), Some(2));
    assert_eq!(pgv(&["list", "--catalog", "/nonexistent/pgv"]).status.code(), Some(2));
}

#[test]
fn mis_tagged_manifest_is_rejected() {
    let dir = scratch("mistag");
    std::fs::create_dir_all(dir.join("o81")).unwrap();
    std::fs::copy(catalog_dir().join("o81/s27xc3.pcp"), dir.join("o81/s27xc3.pcp")).unwrap();
    std::fs::write(dir.join("manifest.txt"), "o81#X o81/s27xc3.pcp 81 maximal-class\n").unwrap();
    let o = pgv(&["verify", "--catalog", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("tag"), "{}", stderr(&o));
}

#[test]
fn list_filters() {
    let o = pgv(&["list", "--order", "27", "--tag", "abelian"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    assert_eq!(stdout(&pgv(&["list"])).lines().count(), 59);
    assert_eq!(stdout(&pgv(&["list", "--extended", "--order", "32"])).lines().count(), 2);
}

#[test]
fn group_summary() {
    let o = pgv(&["group", "--id", "o27#M27", "--elements"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["order\t27", "exponent\t9", "hughes\t27", "mna_count\t1", "regular\ttrue"] {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in\n{out}");
    }
    assert_eq!(out.lines().filter(|l| l.starts_with("element\t")).count(), 27);
}

#[test]
fn isolated_query() {
    let o = pgv(&["isolated", "--id", "o8#Q8", "--gens", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("not isolated") && out.contains("witness"), "{out}");

    let o = pgv(&["isolated", "--id", "o27#SP3", "--gens", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "isolated"), "{}", stdout(&o));

    assert_eq!(pgv(&["isolated", "--id", "o8#Q8", "--gens", "99"]).status.code(), Some(2));
}

#[test]
fn parse_good_and_bad_files() {
    let o = pgv(&["parse", catalog_dir().join("o27/s27.pcp").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("abelianization\t[3, 3]"));

    let dir = scratch("parse");
    let bad = dir.join("bad.pcp");
    std::fs::write(&bad, "p=3; gens a,b;\nb^a = b*q;\n").unwrap();
    let o = pgv(&["parse", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.pcp:2:9"), "{}", stderr(&o));

    let short = dir.join("short.pcp");
    std::fs::write(&short, "p=3; gens a,b,c; a^p = b; b^a = b*c;\n").unwrap();
    let o = pgv(&["parse", short.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("order shortfall"), "{}", stderr(&o));

    assert_eq!(pgv(&["parse", "/nonexistent.pcp"]).status.code(), Some(2));
}
