//! Black-box tests of the `mtsym` binary.

use std::process::{Command, Output};

use mtsym::analysis::search_pairs;
use mtsym::numth::PairReport;

fn mtsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mtsym(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn sval_prints_exact_values() {
    assert_eq!(stdout(&["sval", "1", "2"]), "-1\n");
    assert_eq!(stdout(&["sval", "1", "8"]), "0\n");
    assert_eq!(stdout(&["sval", "11", "32"]), "-1\n");
    assert_eq!(stdout(&["sval", "3", "16"]), "-1/2\n");
    assert_eq!(stdout(&["sval", "--", "-3", "16"]), "-1/2\n");
}

#[test]
fn sval_rejects_bad_denominators() {
    for t in ["3", "0", "27"] {
        let out = mtsym(&["sval", "1", t]);
        assert_eq!(out.status.code(), Some(2), "t = {t}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(mtsym(&["sval", "1"]).status.code(), Some(2));
    assert_eq!(
        mtsym(&["mt", "--level", "2", "--twist", "35", "specialize"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mtsym(&["mt", "--level", "13", "element"]).status.code(),
        Some(2)
    );
    assert_eq!(mtsym(&["lvalue", "77"]).status.code(), Some(2));
    assert_eq!(
        mtsym(&["verify-paper", "--only", "nothing"]).status.code(),
        Some(2)
    );
}

#[test]
fn mt_actions() {
    assert_eq!(stdout(&["mt", "--level", "2", "element"]), "-g^2-g^3\n");
    let twisted = stdout(&["mt", "--level", "3", "--twist", "217", "specialize"]);
    assert!(twisted.ends_with("valuation 5/4\n"), "{twisted}");
    let first = stdout(&["mt", "--level", "1", "--twist", "217", "specialize"]);
    assert!(first.starts_with("0\n"), "{first}");
    let report = stdout(&["mt", "--level", "4", "--format", "csv", "report"]);
    assert_eq!(
        report,
        "n,mu,lambda,valuation,expected,match\n2,0,1,1/2,1/2,true\n3,0,5,5/4,5/4,true\n4,0,5,5/8,5/8,true\n"
    );
}

#[test]
fn lvalue_reports_parity() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["lvalue", "217", "--format", "json"])).unwrap();
    assert_eq!(json["odd"], true);
    assert_eq!(json["euler_congruent"], true);
}

#[test]
fn search_csv_round_trips() {
    let text = stdout(&["search", "--max", "5000", "--format", "csv"]);
    assert!(text.starts_with("m,a_m,p,q,h_q,h_6pq\n"));
    let parsed: Vec<PairReport> = csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(parsed, search_pairs(5000));
    assert!(text.contains("\n217,-35,31,7,1,16\n"));
}

#[test]
fn search_small_bounds() {
    let one = stdout(&["search", "--max", "300", "--format", "csv"]);
    assert_eq!(one, "m,a_m,p,q,h_q,h_6pq\n217,-35,31,7,1,16\n");
    let none = stdout(&["search", "--max", "10", "--format", "csv"]);
    assert_eq!(none, "m,a_m,p,q,h_q,h_6pq\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["search", "--max", "5000"][..],
        &["verify-paper", "--max-level", "4", "--format", "csv"][..],
        &[
            "search",
            "--max",
            "5000",
            "--workers",
            "2",
            "--format",
            "json",
        ][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn verify_paper_passes() {
    let out = stdout(&["verify-paper"]);
    assert!(!out.lines().any(|l| l.starts_with("FAIL")), "{out}");
    assert!(out.lines().last().unwrap().contains(" 0 failed"));
}

#[test]
fn verify_paper_filters() {
    let only = stdout(&["verify-paper", "--only", "modsym"]);
    assert!(only
        .lines()
        .filter(|l| l.starts_with("PASS"))
        .all(|l| l.contains(" modsym ")));
    let low = stdout(&["verify-paper", "--max-level", "3", "--only", "mazur_tate"]);
    assert!(low.contains("v(psi_3(xi_Q3))"));
    assert!(!low.contains("v(psi_4(xi_Q4))"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["verify-paper", "--only", "numth", "--json"])).unwrap();
    assert_eq!(json["failed"], 0);
}

#[test]
fn cache_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.csv");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["sval", "11", "32", "--cache", p]), "-1\n");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.lines().any(|l| l == "32,11,-2"), "{written}");
    assert_eq!(stdout(&["sval", "11", "32", "--cache", p]), "-1\n");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), written);
}
