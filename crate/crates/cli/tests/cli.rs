use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circlealg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

/// A scratch file unique to this test process.
fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("circlealg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const T: &str = r#"{"terms":[{"i":1,"j":1,"m":1,"r":0,"c":"1"}]}"#;
const T_INV: &str = r#"{"terms":[{"i":1,"j":1,"m":-1,"r":0,"c":"1"}]}"#;

#[test]
fn bracket_of_t_and_inverse_is_central() {
    let x = scratch("t.json", T);
    let y = scratch("tinv.json", T_INV);
    let o = run(&[
        "--format",
        "json",
        "bracket",
        "--x",
        x.to_str().unwrap(),
        "--y",
        y.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"kappa":"1","terms":[]}"#);
}

#[test]
fn bracket_with_itself_is_zero() {
    let x = scratch("t2.json", T);
    let o = run(&[
        "--format",
        "json",
        "bracket",
        "--x",
        x.to_str().unwrap(),
        "--y",
        x.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"kappa":"0","terms":[]}"#);
}

#[test]
fn malformed_json_exits_2() {
    let bad = scratch("bad.json", "{not json");
    let o = run(&[
        "bracket",
        "--x",
        bad.to_str().unwrap(),
        "--y",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn element_outside_the_algebra_exits_2() {
    let x = scratch("t3.json", T);
    let o = run(&[
        "bracket",
        "--x",
        x.to_str().unwrap(),
        "--y",
        x.to_str().unwrap(),
        "--n",
        "1",
        "--ell",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn infinite_matrix_bracket() {
    let x = scratch(
        "e1.json",
        r#"{"kappa0":"0","terms":[{"l2":1,"k2":1,"c":"1"}]}"#,
    );
    let y = scratch(
        "e2.json",
        r#"{"kappa0":"0","terms":[{"l2":-1,"k2":-1,"c":"1"}]}"#,
    );
    let o = run(&[
        "--format",
        "json",
        "bracket",
        "--algebra",
        "inf",
        "--x",
        x.to_str().unwrap(),
        "--y",
        y.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kappa0"], "1");
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn character_examples() {
    let o = run(&["character", "--n", "1", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1 3 6 13 24 | match");
    let o = run(&["character", "--n", "1", "--order", "0"]);
    assert_eq!(stdout(&o), "1 | match");
    let o = run(&[
        "character",
        "--variant",
        "o",
        "--n",
        "1",
        "--ell",
        "1",
        "--eps",
        "1",
        "--order",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1 2 4 7 12 21 | match");
}

#[test]
fn character_mismatch_exits_1() {
    let o = run(&["character", "--variant", "sp", "--n", "2", "--order", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("mismatch"));
}

#[test]
fn character_order_and_config_validation() {
    assert_eq!(
        run(&["character", "--n", "1", "--order", "17"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "--max-order",
            "20",
            "character",
            "--n",
            "1",
            "--order",
            "17"
        ])
        .status
        .code(),
        Some(0)
    );
    // sp needs an even n, and ℓ must have n entries.
    assert_eq!(
        run(&["character", "--variant", "sp", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["character", "--n", "2", "--ell", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "jacobi", "--seed", "7", "--samples", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("seed: 7"));
    let o = run(&[
        "verify",
        "singular",
        "--variant",
        "gl",
        "--n",
        "2",
        "--chi",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_reports_failures_with_exit_1() {
    let o = run(&[
        "verify",
        "singular",
        "--variant",
        "o",
        "--n",
        "4",
        "--chi",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn verify_list_names_every_suite() {
    let o = run(&["--format", "json", "verify", "--list"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for want in [
        "jacobi",
        "cocycles",
        "hom",
        "singular",
        "locality",
        "conformal",
        "bracket-equiv",
        "virasoro",
        "fock-rep",
    ] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--format",
        "json",
        "--seed",
        "11",
        "verify",
        "fock-rep",
        "--samples",
        "10",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["pass"], true);
}

#[test]
fn config_file_supplies_defaults() {
    let cfg = scratch(
        "cfg.json",
        r#"{"variant":"o","n":1,"ell":[1],"eps":1,"order":6}"#,
    );
    let o = run(&["--config", cfg.to_str().unwrap(), "character"]);
    assert_eq!(stdout(&o), "1 1 2 4 7 12 21 | match");
    // Flags override the file.
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "character",
        "--order",
        "3",
    ]);
    assert_eq!(stdout(&o), "1 1 2 4 | match");
    let bad = scratch("cfg-bad.json", r#"{"colour":"blue"}"#);
    assert_eq!(
        run(&["--config", bad.to_str().unwrap(), "character"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn act_on_fock_and_vacuum() {
    let x = scratch(
        "act.json",
        r#"{"terms":[{"i":1,"j":1,"m":0,"r":0,"c":"1"}]}"#,
    );
    // σ^ι(E₁₁) on the fermionic vacuum is -ι times the vacuum.
    let o = run(&[
        "--format",
        "json",
        "act",
        "--x",
        x.to_str().unwrap(),
        "--iota",
        "1/3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        r#"{"space":"fermionic","terms":[{"c":"-1/3","thetabars":[],"thetas":[]}]}"#
    );
    let y = scratch("act2.json", T_INV);
    let o = run(&[
        "--format",
        "json",
        "act",
        "--x",
        y.to_str().unwrap(),
        "--module",
        "vacuum",
        "--n",
        "1",
        "--times",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    // A positive mode kills the vacuum.
    let p = scratch("act3.json", T);
    let o = run(&[
        "act",
        "--x",
        p.to_str().unwrap(),
        "--module",
        "vacuum",
        "--n",
        "1",
    ]);
    assert_eq!(stdout(&o), "0");
}

#[test]
fn list_basis_counts() {
    let o = run(&[
        "--format",
        "json",
        "list-basis",
        "--n",
        "1",
        "--degree",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // Degree k contributes k generators t^{s-k}∂^s for gl₁.
    assert_eq!(v["basis"].as_array().unwrap().len(), 1 + 2 + 3);
}
