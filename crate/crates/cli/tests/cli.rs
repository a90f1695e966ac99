use std::collections::BTreeSet;
use std::process::{Command, Output};

use schubert_core::{make_context, Mode, SchubertOp, WedgeElement};

fn schubert(args: &str) -> Output {
    schubert_env(args, &[])
}

fn schubert_env(args: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_schubert"));
    cmd.args(args.split_whitespace()).env_remove("SCHUBERT_MAX_N");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn pieri_d1_on_mu1_mu3() {
    let out = schubert("pieri --n 4 --k 2 --h 1 --index 1,3 --mode torus --basis mu --format text --verify");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "(y3 - y1)*mu1^mu3 + mu1^mu4 + mu2^mu3\n");
    assert!(stderr(&out).contains("agrees"));
}

#[test]
fn identity_matrix_for_first_class() {
    let out = schubert("matrix --n 4 --k 2 --index 1,2 --mode torus --basis mu --format json");
    assert_eq!(out.status.code(), Some(0));
    let ctx = make_context(4, 2, Mode::Torus).unwrap();
    let op = SchubertOp::from_json(stdout(&out).trim(), &ctx).unwrap();
    assert!(op.is_identity());
    assert_eq!(op.dim(), 6);
}

#[test]
fn relations_report() {
    let out = schubert("relations --n 4 --k 2 --mode torus");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2 relations, all zero\n");
    let out = schubert("relations --n 5 --k 3 --mode generic --format json --verify");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "{\"all_zero\":true,\"count\":3,\"nonzero\":[]}\n");
}

#[test]
fn classical_table() {
    let out = schubert("table --n 4 --k 2 --mode classical --verify");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows: Vec<serde_json::Value> =
        stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let pairs: BTreeSet<_> = rows.iter().map(|r| (r["I"].to_string(), r["J"].to_string())).collect();
    assert_eq!(pairs.len(), 21);
    assert!(rows.iter().all(|r| r["coeff"] == "0" || r["coeff"] == "1"));
    // the first class acts as the identity
    for r in rows.iter().filter(|r| r["I"] == serde_json::json!([1, 2])) {
        let expected = if r["J"] == r["K"] { "1" } else { "0" };
        assert_eq!(r["coeff"], expected);
    }
}

#[test]
fn torus_table_entry() {
    let out = schubert("table --n 4 --k 2");
    assert_eq!(out.status.code(), Some(0));
    let line = r#"{"I":[1,3],"J":[1,3],"K":[1,3],"coeff":"y3 - y2"}"#;
    assert!(stdout(&out).lines().any(|l| l == line));
}

#[test]
fn outputs_are_deterministic() {
    for args in ["table --n 4 --k 2", "table --n 5 --k 2 --mode generic", "matrix --n 4 --k 2 --index 2,4"] {
        assert_eq!(schubert(args).stdout, schubert(args).stdout, "{args}");
    }
}

#[test]
fn json_round_trips() {
    let ctx = make_context(5, 2, Mode::Torus).unwrap();
    let out = schubert("pieri --n 5 --k 2 --h 2 --index 2,3 --format json");
    let text = stdout(&out);
    let w = WedgeElement::from_json(text.trim(), &ctx).unwrap();
    assert_eq!(w.to_json(), text.trim());
    let out = schubert("matrix --n 5 --k 2 --index 1,4 --format json --verify");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(SchubertOp::from_json(text.trim(), &ctx).unwrap().to_json(), text.trim());
}

#[test]
fn multiply_formats() {
    let out = schubert("multiply --n 4 --k 2 --index 1,3 --by 1,3 --mode classical --format json --verify");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"I":[1,3],"J":[1,3],"basis":"epsilon","terms":[{"K":[1,4],"coeff":"1"},{"K":[2,3],"coeff":"1"}]}"#
    );
    let out = schubert("multiply --n 4 --k 2 --index 1,3 --by 1,3 --format latex");
    assert_eq!(stdout(&out).trim(), "(y_{3} - y_{2})\\,G_{1,3} + G_{1,4} + G_{2,3}");
}

#[test]
fn giambelli_all_indices() {
    for mode in ["classical", "generic", "torus"] {
        let out = schubert(&format!("giambelli --n 4 --k 2 --mode {mode} --verify"));
        assert_eq!(out.status.code(), Some(0), "{mode}: {}", stderr(&out));
        assert_eq!(stdout(&out).lines().count(), 6);
    }
    let out = schubert("giambelli --n 4 --k 2 --index 2,4");
    assert_eq!(stdout(&out), "2,4: mu2^mu4\n");
}

#[test]
fn gkm_check_on_fixtures() {
    let out = schubert(&format!("gkm-check --fixtures {}", fixture("g24_printed.json")));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 6);
    assert!(stdout(&out).lines().all(|l| l.ends_with("12 edges, all divisible")));
    // the printed tables differ off the diagonal
    let out = schubert(&format!("gkm-check --fixtures {} --verify", fixture("g24_printed.json")));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("G1,3"));
    let out = schubert(&format!("gkm-check --fixtures {} --verify", fixture("g24_corrected.json")));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = schubert("gkm-check --n 5 --k 3 --format json");
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 10);
}

#[test]
fn gkm_check_reports_failures() {
    let dir = std::env::temp_dir().join(format!("schubert-gkm-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    let text = std::fs::read_to_string(fixture("g24_corrected.json")).unwrap();
    let mut set: serde_json::Value = serde_json::from_str(&text).unwrap();
    set["operators"]["3,4"]["entries"][5][5] = serde_json::json!("1");
    std::fs::write(&path, set.to_string()).unwrap();
    let out = schubert(&format!("gkm-check --fixtures {}", path.display()));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("G3,4: 4 of 12 edges fail"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_name_the_token() {
    let cases = [
        ("matrix --n 4 --k 2 --index 1,5", "1,5"),
        ("matrix --n 4 --k 2 --index 3,1", "3,1"),
        ("matrix --n 4 --k 2 --index 1,x", "x"),
        ("matrix --n 4 --k 5 --index 1,2", "k = 5"),
        ("matrix --n 4 --k 2 --index 1,2 --bogus", "--bogus"),
        ("matrix --n 4 --k 2 --index 1,2 --mode classical --basis mu", "--basis mu"),
        ("matrix --n 4 --k 2 --index 1,2 --mode quantum", "quantum"),
        ("pieri --n 4 --k 2 --h 1 --index 1,2,3", "1,2,3"),
    ];
    for (args, token) in cases {
        let out = schubert(args);
        assert_eq!(out.status.code(), Some(2), "{args}");
        assert!(stderr(&out).contains(token), "{args}: {}", stderr(&out));
    }
}

#[test]
fn table_size_limit() {
    let out = schubert("table --n 9 --k 1 --mode classical");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--force"));
    let out = schubert("table --n 9 --k 1 --mode classical --force");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 45 * 9);
    let out = schubert_env("table --n 9 --k 1 --mode classical", &[("SCHUBERT_MAX_N", "9")]);
    assert_eq!(out.status.code(), Some(0));
    let out = schubert_env("table --n 3 --k 1 --mode classical", &[("SCHUBERT_MAX_N", "2")]);
    assert_eq!(out.status.code(), Some(2));
}
