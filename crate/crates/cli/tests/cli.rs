use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn wmha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmha")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(wmha(&["validate", &data("pair2.json")]).status.code(), Some(0));
    let bad = wmha(&["validate", &data("pair2-corrupt.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL] groupoid.target-of-product"));
    assert!(stdout(&bad).contains("pq=11"));
    assert_eq!(wmha(&["validate", &data("missing.json")]).status.code(), Some(2));
    assert_eq!(wmha(&["validate", "--window", "0", &data("pair2.json")]).status.code(), Some(2));
}

#[test]
fn validate_rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"kind\": \"pair\"").unwrap();
    assert_eq!(wmha(&["validate", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_families() {
    let kg = wmha(&["verify", "--family", "kg", &data("pair2.json"), "--oracle"]);
    assert_eq!(kg.status.code(), Some(0));
    assert!(stdout(&kg).contains("verdict: regular-wmha-star"));
    assert!(stdout(&kg).contains("[pass] oracle.antipode"));

    let cg = wmha(&["verify", "--family", "cg", &data("z3group.json")]);
    assert_eq!(cg.status.code(), Some(0));
    assert!(stdout(&cg).contains("verdict: mha"));

    let wh = wmha(&["verify", "--family", "weak-hopf", &data("cg2-unital.json")]);
    assert_eq!(wh.status.code(), Some(0));
    let out = stdout(&wh);
    assert!(out.contains("verdict: weak-hopf"));
    assert!(out.contains("[pass] weak-hopf.multiplicativity-left"));
    assert!(out.contains("[pass] weak-hopf.multiplicativity-right"));
}

#[test]
fn oracle_only_adds_rows() {
    let plain = wmha(&["verify", "--family", "cg", &data("pair2.json"), "--format", "json"]);
    let oracle = wmha(&["verify", "--family", "cg", &data("pair2.json"), "--format", "json", "--oracle"]);
    let a: serde_json::Value = serde_json::from_slice(&plain.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&oracle.stdout).unwrap();
    assert_eq!(a["verdict"], b["verdict"]);
    let n = |v: &serde_json::Value| v["checks"].as_array().unwrap().len();
    assert!(n(&b) > n(&a));
}

#[test]
fn verify_negative_result_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("nilpotent.json");
    // A two-dimensional algebra with e·e = 0: no coproduct on it is full.
    std::fs::write(
        &p,
        r#"{"algebra": {"basis": ["a", "b"], "mult": {"a,a": [["a", "1", "0"]]}},
            "coproduct": {"a": [["a", "a", "1", "0"]]}}"#,
    )
    .unwrap();
    let o = wmha(&["verify", "--family", "table-coproduct", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: not-wmha"));
}

#[test]
fn pairing_tables() {
    let o = wmha(&["pairing", &data("pair2.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(c.as_str().unwrap(), if i == j { "1" } else { "0" });
        }
    }
    assert_eq!(wmha(&["pairing", "--window", "4", &data("natpair.json")]).status.code(), Some(0));

    let u = wmha(&["pairing", &data("z2-z3-union.json"), "--format", "json"]);
    assert_eq!(u.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&u.stdout).unwrap();
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 5);
    // Arrows of different parts never pair.
    for i in 0..2 {
        for j in 2..5 {
            assert_eq!(m[i][j], "0");
            assert_eq!(m[j][i], "0");
        }
    }
}

#[test]
fn report_merges_and_groups() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    let pairing = dir.path().join("pairing.json");
    let g = good.to_str().unwrap();
    let b = bad.to_str().unwrap();
    let p = pairing.to_str().unwrap();
    assert_eq!(wmha(&["validate", &data("pair2.json"), "--format", "json", "--out", g]).status.code(), Some(0));
    assert_eq!(wmha(&["validate", &data("pair2-corrupt.json"), "--format", "json", "--out", b]).status.code(), Some(1));
    assert_eq!(wmha(&["pairing", &data("pair2.json"), "--format", "json", "--out", p]).status.code(), Some(0));

    let one = wmha(&["report", g, p]);
    assert_eq!(one.status.code(), Some(0));
    let out = stdout(&one);
    assert!(out.contains("verdict: pass"));
    assert!(!out.contains("FAIL"));

    let both = wmha(&["report", g, b, "--format", "json"]);
    assert_eq!(both.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&both.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    let failing = v["groups"]["groupoid"]["failing"].as_array().unwrap();
    assert!(failing.iter().any(|f| f.as_str().unwrap().ends_with("groupoid.target-of-product")));

    assert_eq!(wmha(&["report"]).status.code(), Some(2));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "[1, 2]").unwrap();
    assert_eq!(wmha(&["report", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--family", "kg", &data("natpair.json"), "--seed", "7", "--format", "json"];
    let a = wmha(&args);
    let b = wmha(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
