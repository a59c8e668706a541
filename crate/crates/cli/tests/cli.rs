use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gyrokit::axioms::{verify_axioms, Window};
use gyrokit::builtin::builtin_finite;
use gyrokit::CayleyTable;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn gyrokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gyrokit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = gyrokit(&all);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).unwrap(),
    )
}

fn golden(name: &str, args: &[&str]) {
    let o = gyrokit(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let expected = fs::read_to_string(fixture("golden").join(name)).unwrap();
    assert_eq!(stdout(&o), expected, "golden file {name}");
}

#[test]
fn golden_reports() {
    golden("verify_g24b.txt", &["verify", "--builtin", "G24b"]);
    golden("xyy_k8.txt", &["xyy", "--builtin", "K8"]);
    golden(
        "enumerate_z3_k8.txt",
        &["enumerate-sigma", "--h", "Z3", "--k", "K8"],
    );
}

#[test]
fn verify_matches_the_library() {
    let (code, v) = json(&["verify", "--builtin", "G32q"]);
    assert_eq!(code, 0);
    let g = builtin_finite("G32q").unwrap();
    let direct = verify_axioms(&g, &Window::full(g.order()));
    assert_eq!(v["checks"], serde_json::to_value(&direct.checks).unwrap());
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn corrupted_table_fails_with_a_witness_triple() {
    let path = fixture("fixtures/g24b_corrupted.tbl");
    let o = gyrokit(&["verify", "--table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let (_, v) = json(&["verify", "--table", path.to_str().unwrap()]);
    let gyroassoc = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "gyroassociative law")
        .unwrap();
    assert_eq!(gyroassoc["passed"], Value::Bool(false));
    assert_eq!(
        gyroassoc["witness"]["elements"].as_array().unwrap().len(),
        3
    );
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let short = dir.path().join("short.tbl");
    fs::write(&short, "3\n0 1 2\n1 2\n").unwrap();
    let words = dir.path().join("words.tbl");
    fs::write(&words, "2\n0 one\n1 0\n").unwrap();
    let range = dir.path().join("range.tbl");
    fs::write(&range, "2\n0 1\n1 5\n").unwrap();
    for p in [&short, &words, &range] {
        let o = gyrokit(&["verify", "--table", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", p.display());
    }
    assert_eq!(
        gyrokit(&["verify", "--builtin", "G99"]).status.code(),
        Some(2)
    );
    assert_eq!(gyrokit(&["verify"]).status.code(), Some(2));
    assert_eq!(gyrokit(&["no-such-verb"]).status.code(), Some(2));
    let missing = dir.path().join("missing.ext");
    let o = gyrokit(&["split", "--extension", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let text_path = dir.path().join("g.tbl");
    let json_path = dir.path().join("g.json");
    fs::write(
        &text_path,
        stdout(&gyrokit(&["export", "--builtin", "G24q"])),
    )
    .unwrap();
    fs::write(
        &json_path,
        stdout(&gyrokit(&["export", "--builtin", "G24q", "--json"])),
    )
    .unwrap();
    let original = builtin_finite("G24q").unwrap().table().clone();
    assert_eq!(CayleyTable::load(&text_path).unwrap(), original);
    assert_eq!(CayleyTable::load(&json_path).unwrap(), original);
    let (_, again) = json(&["export", "--table", json_path.to_str().unwrap()]);
    assert_eq!(again, serde_json::to_value(&original).unwrap());
    let o = gyrokit(&["verify", "--table", json_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

fn body(fs_text: &str) -> Vec<&str> {
    fs_text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn extract_build_extract_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let ext = fixture("fixtures/g24b.ext");
    let o = gyrokit(&[
        "extract",
        "--extension",
        ext.to_str().unwrap(),
        "--random",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    assert!(first.starts_with("# random section, seed 7"));
    let fs_path = dir.path().join("fs.txt");
    fs::write(&fs_path, &first).unwrap();

    let out = dir.path().join("built.tbl");
    let o = gyrokit(&[
        "build",
        "--factor-system",
        fs_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let built_ext = out.with_extension("ext");
    let o = gyrokit(&["extract", "--extension", built_ext.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&stdout(&o)), body(&first));
}

#[test]
fn seeded_runs_repeat() {
    let ext = fixture("fixtures/g24b.ext");
    let args = [
        "section-change",
        "--extension",
        ext.to_str().unwrap(),
        "--seed",
        "11",
        "--pairs",
        "4",
    ];
    let a = gyrokit(&args);
    let b = gyrokit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed 11"));
}

#[test]
fn morphism_and_split() {
    let ext = fixture("fixtures/g24b.ext");
    let m = fixture("fixtures/negate_and_a.morph");
    let e = ext.to_str().unwrap();
    let (code, v) = json(&[
        "morphism",
        "--source",
        e,
        "--target",
        e,
        "--morphism",
        m.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["induced"]["lambda"], serde_json::json!([0, 2, 1]));
    let (code, v) = json(&["split", "--extension", e]);
    assert_eq!(code, 0);
    assert_eq!(v["split"], Value::Bool(true));
}

#[test]
fn broken_morphism_fails() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.morph");
    let mu: Vec<String> = (0..24).map(|i| ((i + 1) % 24).to_string()).collect();
    fs::write(
        &bad,
        format!("lambda\n0 1 2\nmu\n{}\nnu\n0 1 2 3 4 5 6 7\n", mu.join(" ")),
    )
    .unwrap();
    let e = fixture("fixtures/g24b.ext");
    let e = e.to_str().unwrap();
    let o = gyrokit(&[
        "morphism",
        "--source",
        e,
        "--target",
        e,
        "--morphism",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_sigma_fails() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("sigma.txt");
    // σ negates only at 1: violates σ_((xy)y) = σ_x
    let lines: Vec<&str> = (0..8)
        .map(|x| if x == 1 { "0 2 1" } else { "0 1 2" })
        .collect();
    fs::write(&sigma, lines.join("\n")).unwrap();
    let o = gyrokit(&[
        "semicross",
        "--h",
        "Z3",
        "--k",
        "K8",
        "--sigma",
        sigma.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn quotient_and_gyrtab() {
    let (code, v) = json(&["quotient", "--builtin", "G24b", "--subset", "0,8,16"]);
    assert_eq!(code, 0);
    assert_eq!(v["cosets"].as_array().unwrap().len(), 8);
    // {0, 1} is not a subgroup of G24b
    let o = gyrokit(&["quotient", "--builtin", "G24b", "--subset", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, v) = json(&["gyrtab", "--builtin", "G24b"]);
    assert_eq!(code, 0);
    assert_eq!(v["nontrivial"], 42 * 9);
}

#[test]
fn rule_backed_window_and_threads() {
    let (code, v) = json(&[
        "verify",
        "--builtin",
        "Ginf_q",
        "--window",
        "4",
        "--threads",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["elements"], 72);
    assert_eq!(v["window"], 4);
    let (code, _) = json(&["identities", "--builtin", "Ginf_b", "--window", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn builtin_listing() {
    let o = gyrokit(&["builtin", "--list"]);
    assert!(stdout(&o).lines().any(|l| l == "Ginf_b"));
    let (_, v) = json(&["builtin", "G24a"]);
    assert_eq!(v["group"], Value::Bool(false));
    assert_eq!(v["order"], 24);
}
