use std::path::Path;
use std::process::{Command, Output};

use liecoh::lie::RepFile;

fn liecoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_rep(dir: &Path, name: &str, args: &[&str]) -> String {
    let o = liecoh(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn dims_of_trivial_and_twisted_reps() {
    let dir = tempfile::tempdir().unwrap();
    let triv = write_rep(dir.path(), "triv.json", &["rep", "standard", "--d", "2", "--alphas", "0"]);
    let o = liecoh(&["dims", &triv]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1 1 0 0"));
    let x1 = write_rep(dir.path(), "x1.json", &["rep", "standard", "--d", "2", "--alphas", "1"]);
    assert_eq!(stdout(&liecoh(&["dims", &x1])).lines().next(), Some("0 2 2 0"));
    let geom = liecoh(&["dims", &triv, "--sub", "geom", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&geom.stdout).unwrap();
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 2, 1]));
}

#[test]
fn malformed_input_exits_2_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"d": 1, "dim": 1, "matrices": [[["0"]], [[7]]]}"#).unwrap();
    let o = liecoh(&["dims", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matrices[1][0][0]"));

    std::fs::write(&bad, r#"{"d": 1, "dim": 1, "matrices": [[["0"]]]}"#).unwrap();
    let o = liecoh(&["dims", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    // bracket relation violated: [X_0, X_1] = X_1 fails for X_0 = 0, X_1 = 1
    std::fs::write(&bad, r#"{"d": 1, "dim": 1, "matrices": [[["0"]], [["1"]]]}"#).unwrap();
    assert_eq!(liecoh(&["dims", bad.to_str().unwrap()]).status.code(), Some(2));

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(liecoh(&["classify", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(liecoh(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(liecoh(&["verify", "caL-table", "--alphas", "5..1"]).status.code(), Some(2));
    assert_eq!(liecoh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(liecoh(&["padic", "exp", "--p", "2", "--a", "1"]).status.code(), Some(2));
    assert_eq!(liecoh(&["padic", "exp", "--p", "4", "--a", "4"]).status.code(), Some(2));
    assert_eq!(liecoh(&["verify", "padic", "--p", "2", "--trials", "1"]).status.code(), Some(0));
}

#[test]
fn spec_verify_examples_pass() {
    for args in [
        &["verify", "caL-table", "--d", "3", "--alphas", "-2..5,half"][..],
        &["verify", "relations", "--d", "2"],
        &["verify", "euler", "--trials", "50", "--seed", "7"],
        &["verify", "clas", "--trials", "5"],
        &["verify", "extone", "--d", "2", "--p", "5"],
    ] {
        let o = liecoh(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn cal_table_csv_and_json() {
    let o = liecoh(&["verify", "caL-table", "--d", "2", "--alphas", "0..2,sqrt2"]);
    let text = stdout(&o);
    assert!(text.contains("alpha,q0,q1,q2,q3"));
    assert!(text.contains("\"X - 1\",0,2,2,0"));
    assert!(text.contains("\"X^2 - 2\",0,0,0,0"));
    let o = liecoh(&["verify", "caL-table", "--d", "2", "--alphas", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cell = &v["result"][0]["cells"][1];
    assert_eq!(v["result"][0]["d"], 2);
    assert_eq!(cell["alpha"], "X - 1");
    assert_eq!(cell["q"], 1);
    assert_eq!(cell["computed"], 2);
    assert_eq!(cell["expected"], 2);
    assert_eq!(cell["pass"], true);
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for (path, mode) in [(&a, None), (&b, Some("--sequential"))] {
        let mut args = vec!["verify", "zsplit", "--trials", "6", "--seed", "11", "--json", "--out", path.to_str().unwrap()];
        args.extend(mode);
        assert_eq!(liecoh(&args).status.code(), Some(0));
    }
    let (ra, rb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    // the echoed command differs only by the flags themselves
    let strip = |s: &str| s.lines().filter(|l| !l.contains("\"command\"")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&ra), strip(&rb));
    let again = liecoh(&["verify", "zsplit", "--trials", "6", "--seed", "11", "--json", "--out", a.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(std::fs::read_to_string(&a).unwrap(), ra);
    let v: serde_json::Value = serde_json::from_str(&ra).unwrap();
    assert_eq!(v["seed"], 11);
}

#[test]
fn emitted_reps_reparse_identically() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        &["rep", "random", "--d", "3", "--dim", "6", "--seed", "5"][..],
        &["rep", "standard", "--d", "2", "--alphas", "golden,1/3,-2"],
        &["rep", "logchi", "--d", "1"],
        &["rep", "s", "--d", "3", "--j", "2", "--label", "ext"],
    ]
    .iter()
    .enumerate()
    {
        let path = write_rep(dir.path(), &format!("r{i}.json"), args);
        let text = std::fs::read_to_string(&path).unwrap();
        let file: RepFile = serde_json::from_str(&text).unwrap();
        let rep = file.to_rep().unwrap();
        assert_eq!(serde_json::to_string_pretty(&rep.to_file(file.label.clone())).unwrap() + "\n", text);
        assert_eq!(liecoh(&["dims", &path]).status.code(), Some(0));
    }
}

#[test]
fn classify_reports_unipotent_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.json");
    std::fs::write(
        &path,
        r#"{"d": 1, "dim": 3, "matrices": [[["0","0","0"],["1","0","0"],["0","0","0"]], [["0","0","0"],["0","0","0"],["0","0","0"]]]}"#,
    )
    .unwrap();
    let o = liecoh(&["classify", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["unipotent_blocks"], serde_json::json!([2, 1]));
    assert_eq!(v["result"]["z_split"]["z_dim"], 3);
    assert_eq!(v["result"]["length"][0]["factor"], "X");

    let q = write_rep(dir.path(), "q.json", &["rep", "standard", "--d", "1", "--alphas", "sqrt2"]);
    let v: serde_json::Value = serde_json::from_slice(&liecoh(&["classify", &q, "--json"]).stdout).unwrap();
    assert_eq!(v["result"]["irreducible"], true);
    assert!(v["result"]["unipotent_blocks"].is_null());
}

#[test]
fn padic_commands() {
    let o = liecoh(&["padic", "cocycle", "--p", "3", "--u", "7", "--z", "1,2", "--hu", "13", "--hz", "-1,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("s_2 = 2 + O(3^20)"));
    let o = liecoh(&["padic", "exp", "--p", "5", "--a", "5", "--b", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["z"][0]["residue"], "0");
    // outside the exp domain
    assert_eq!(liecoh(&["padic", "exp", "--p", "5", "--a", "1"]).status.code(), Some(2));
    assert_eq!(liecoh(&["padic", "log", "--p", "5", "--u", "2"]).status.code(), Some(2));
}

#[test]
fn cup_table_passes() {
    let o = liecoh(&["cup-table", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank of delta wedges"));
}
