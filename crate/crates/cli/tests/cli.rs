use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use hopfchi::{build, FamilyKind, FamilySpec};

fn hopfchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn classify_en2() {
    let out = hopfchi(&["classify", "--family", "en:2", "--r", "en-a:[[0,0],[0,0]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["dims"]["precartier"], 4);
    assert_eq!(v["dims"]["cartier"], 1);
    assert_eq!(v["dims"]["h2"], 3);
    assert_eq!(v["flags"]["matches_paper_theorem"], true);
}

#[test]
fn classify_h8_enumerate() {
    let out = hopfchi(&["classify", "--family", "h8", "--r", "enumerate", "--no-cohomology"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 8);
    assert!(reports
        .iter()
        .all(|r| r["dims"]["precartier"] == 0 && r["dims"]["h2"].is_null()));
    assert_eq!(reports[0]["field"], "cyclotomic:8");
}

#[test]
fn cohomology_en3() {
    let out = hopfchi(&["cohomology", "--family", "en:3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["h2"], 6);
    assert_eq!(v["h1"], 0);
    assert_eq!(v["b2"], 16);
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["classify", "--family", "ac2n:2", "--r", "enumerate"];
    let a = hopfchi(&args);
    let b = hopfchi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_and_table_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub/en1.txt");
    let out = hopfchi(&[
        "classify",
        "--family",
        "en:1",
        "--r",
        "en-a:[[1]]",
        "--format",
        "table",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("family"));
    assert!(text.contains("en-a:[[1]]"));
}

#[test]
fn corrupted_expected_table_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    std::fs::write(
        &path,
        r#"[{"quantity": "precartier", "value": 5, "statement": "deliberately wrong"}]"#,
    )
    .unwrap();
    let out = hopfchi(&[
        "classify",
        "--family",
        "en:1",
        "--r",
        "en-a:[[0]]",
        "--expected",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["flags"]["matches_paper_theorem"], false);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 1);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["classify", "--family", "nope"],
        vec!["classify", "--family", "en:2", "--field", "prime:4"],
        vec![
            "classify",
            "--family",
            "h8",
            "--field",
            "rational",
            "--r",
            "h8omega:z8^1",
        ],
        vec!["classify", "--family", "en:2", "--r", "en-a:[[1]]"],
        vec!["parse", "--family", "en:1", "--expr", "x1 (x) (x)"],
        vec!["frobnicate"],
    ] {
        assert_eq!(hopfchi(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn non_quasitriangular_r_exits_one() {
    let out = hopfchi(&["classify", "--family", "en:1", "--r", "explicit:1 (x) 1 + g (x) x1"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_reports_h8_identities() {
    let out = hopfchi(&["verify", "--family", "h8", "--r", "h8omega:z8^3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["r"][0]["passed"], true);
    let checks = v["h8_identities"]["checks"].as_array().unwrap();
    let by_name = |n: &str| {
        checks.iter().find(|c| c["name"] == n).unwrap()["failures"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(by_name("conj_z_plus"), 0);
    assert!(by_name("conj_z") > 0);
}

#[test]
fn quantize_every_basis_vector() {
    let out = hopfchi(&["quantize", "--family", "en:2", "--r", "en-a:[[1,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["passed"] == true));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn batch_runs_every_entry() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("en1.json");
    let b = dir.path().join("ac22.txt");
    let cfg = serde_json::json!({ "runs": [
        { "family": "en:1", "r": "en-a:[[2]]", "tasks": ["verify", "classify", "cohomology", "quantize"], "output": a },
        { "family": "ac2n:2", "r": "enumerate", "tasks": ["classify"], "output": b, "format": "table" },
    ]});
    let cfg = write(dir.path(), "cfg.json", &cfg.to_string());
    let out = hopfchi(&["batch", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["results"]["classify"][0]["dims"]["precartier"], 1);
    assert_eq!(v["results"]["cohomology"]["h2"], 1);
    assert!(std::fs::read_to_string(&b).unwrap().contains("== classify"));
}

#[test]
fn batch_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        "not json",
        r#"{"runs": []}"#,
        r#"{"runs": [{"family": "en:1", "tasks": ["dance"]}]}"#,
        r#"{"runs": [{"family": "en:1", "tasks": []}]}"#,
        r#"{"runs": [{"family": "en:1", "tasks": ["quantize"]}]}"#,
    ] {
        let cfg = write(dir.path(), "cfg.json", text);
        assert_eq!(hopfchi(&["batch", "--config", &cfg]).status.code(), Some(2), "{text}");
    }
}

#[test]
fn parse_prints_canonical_form() {
    let out = hopfchi(&["parse", "--family", "en:1", "--expr", "x1*g (x) 1", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-g*x1 (x) 1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Formatting then parsing a random tensor gives it back.
    #[test]
    fn parser_round_trip(coeffs in proptest::collection::vec((0usize..64, -5i64..=5, 1i64..=4), 0..8)) {
        let h = build(&FamilySpec::default_field(FamilyKind::En(2))).unwrap();
        let f = h.field();
        let mut t = h.zero::<2>();
        for (i, num, den) in coeffs {
            let c = &f.int(num) * &f.int(den).inv().unwrap();
            let unit = h.tensor_from_vec::<2>(hopfchi::SparseVec::unit(f, 64, i)).unwrap();
            t = t + unit.scale(&c);
        }
        let text = h.format(&t);
        prop_assert_eq!(h.parse::<2>(&text).unwrap(), t);
    }
}
