use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn polyadic(args: &[&str]) -> (i32, Value, String) {
    polyadic_env(args, &[])
}

fn polyadic_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polyadic"));
    cmd.args(args).env_remove("POLYADIC_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.display().to_string()
}

/// `x + y + z + 1` on Z_3 as a nested table.
fn ternary_z3_plus_one() -> Value {
    let t: Vec<Vec<Vec<usize>>> =
        (0..3).map(|x| (0..3).map(|y| (0..3).map(|z| (x + y + z + 1) % 3).collect()).collect()).collect();
    json!({"arity": 3, "table": t})
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_valid_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "p.json", &ternary_z3_plus_one());
    let (code, report, _) = polyadic(&["verify", &file]);
    assert_eq!(code, 0);
    assert_eq!(report["passed"], true);
    for name in ["axioms", "skew", "dornte", "nary_identity"] {
        assert_eq!(check(&report, name)["passed"], true, "{name}");
    }
    // f(a, x, a) = x + 2a + 1 = x needs 2a + 1 = 0, so a = 1.
    assert_eq!(check(&report, "nary_identity")["detail"]["identity"], 1);
}

#[test]
fn verify_mutated_table_prints_latin_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = ternary_z3_plus_one();
    p["table"][0][0][0] = json!(2);
    let file = write(dir.path(), "p.json", &p);
    let (code, report, _) = polyadic(&["verify", &file]);
    assert_eq!(code, 1);
    let axioms = check(&report, "axioms");
    assert_eq!(axioms["passed"], false);
    assert_eq!(axioms["detail"]["violation"]["axiom"], "not_latin");
}

#[test]
fn verify_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(polyadic(&["verify", bad.to_str().unwrap()]).0, 2);
    let short = write(dir.path(), "short.json", &json!({"arity": 3, "table": [[0, 1], [1, 0]]}));
    assert_eq!(polyadic(&["verify", &short]).0, 2);
    let missing = dir.path().join("missing.json");
    let (code, _, stderr) = polyadic(&["verify", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn verify_hg_conditions() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(
        dir.path(),
        "ok.json",
        &json!({"arity": 3, "hg": {"group": {"library": "Z4"}, "theta": [0, 3, 2, 1], "b": 2}}),
    );
    let (code, report, _) = polyadic(&["verify", &ok]);
    assert_eq!(code, 0);
    assert_eq!(check(&report, "nary_identity")["detail"]["reducible"], false);
    // Negation moves b = 1.
    let bad = write(
        dir.path(),
        "bad.json",
        &json!({"arity": 3, "hg": {"group": {"library": "Z4"}, "theta": [0, 3, 2, 1], "b": 1}}),
    );
    let (code, report, _) = polyadic(&["verify", &bad]);
    assert_eq!(code, 1);
    assert_eq!(check(&report, "hg_conditions")["detail"]["condition"], "FixesB");
}

#[test]
fn catalog_order_two_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    let (code, report, _) = polyadic(&["catalog", "--arity", "3", "--max-order", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(check(&report, "classes")["detail"]["count"], 2);
    assert_eq!(check(&report, "brute force agrees at order 2")["detail"]["tables_scanned"], 256);
    let cat: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // Every written entry is itself a polyadic group file.
    for (k, entry) in cat["entries"].as_array().unwrap().iter().enumerate() {
        let file = write(dir.path(), &format!("e{k}.json"), entry);
        assert_eq!(polyadic(&["verify", &file]).0, 0);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_polyadic")).args(args).output().unwrap().stdout;
    for args in [&["catalog", "--arity", "3", "--max-order", "4"][..], &["suite", "reconstruct"][..]] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn budget_override() {
    let (code, _, stderr) = polyadic_env(&["catalog", "--arity", "3", "--max-order", "4"], &[("POLYADIC_BUDGET", "3")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn catalog_arity_precondition() {
    assert_eq!(polyadic(&["catalog", "--arity", "2", "--max-order", "2"]).0, 2);
}

#[test]
fn suites_with_defaults() {
    for name in ["hg-roundtrip", "hom-equivalence", "der-commute"] {
        let (code, report, _) = polyadic(&["suite", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(report["command"], format!("suite {name}"));
    }
    let (code, _, _) = polyadic(&["suite", "pro-x", "--class", "2-group"]);
    assert_eq!(code, 0);
    assert_eq!(polyadic(&["suite", "nonexistent"]).0, 2);
    assert_eq!(polyadic(&["suite", "pro-x", "--class", "6-group"]).0, 2);
}

#[test]
fn suite_pro_x_on_sign_chain_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "z2.json", &json!({"arity": 3, "hg": {"group": {"library": "Z2"}, "theta": [0, 1], "b": 0}}));
    write(
        dir.path(),
        "s3.json",
        &json!({"arity": 3, "hg": {"group": {"library": "S3"}, "theta": [0, 1, 2, 3, 4, 5], "b": 0}}),
    );
    let (code, report, _) =
        polyadic(&["suite", "reconstruct", "--input", &dir.path().join("s3.json").display().to_string()]);
    assert_eq!(code, 0, "{report}");
    let sign = sign_map();
    let system = write(
        dir.path(),
        "sys.json",
        &json!({"poset": [[0, 1]], "stages": ["z2.json", "s3.json"], "maps": [{"from": 1, "to": 0, "map": sign}]}),
    );
    let (code, report, _) = polyadic(&["suite", "pro-x", "--input", &system, "--class", "abelian"]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(failed.iter().any(|c| !c["detail"]["counterexample"].is_null()));
    // The system is not a polyadic group file.
    assert_eq!(polyadic(&["suite", "hg-roundtrip", "--input", &system]).0, 2);
}

/// Sign map of the library S3, read off its elements' orders.
fn sign_map() -> Vec<usize> {
    let s3 = polyadic::group::library::by_name("S3").unwrap();
    s3.elements().map(|x| usize::from(s3.element_order(x) == 2)).collect()
}

#[test]
fn suite_with_hom_and_congruence_files() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "z4.json",
        &json!({"arity": 3, "hg": {"group": {"library": "Z4"}, "theta": [0, 3, 2, 1], "b": 0}}),
    );
    write(dir.path(), "z2.json", &json!({"arity": 3, "hg": {"group": {"library": "Z2"}, "theta": [0, 1], "b": 0}}));
    let hom = write(dir.path(), "hom.json", &json!({"source": "z4.json", "target": "z2.json", "map": [0, 1, 0, 1]}));
    let (code, report, _) = polyadic(&["suite", "hom-equivalence", "--input", &hom]);
    assert_eq!(code, 0, "{report}");
    let cong = write(dir.path(), "cong.json", &json!({"polyadic": "z4.json", "partition": [[0, 2], [1, 3]]}));
    assert_eq!(polyadic(&["suite", "congruence-quotient", "--input", &cong]).0, 0);
    let not_cong = write(dir.path(), "bad.json", &json!({"polyadic": "z4.json", "partition": [[0, 1], [2, 3]]}));
    assert_eq!(polyadic(&["suite", "congruence-quotient", "--input", &not_cong]).0, 1);
}

#[test]
fn tower_command() {
    let (code, report, _) = polyadic(&[
        "tower",
        "--kind",
        "cyclic_pk",
        "--p",
        "2",
        "--depth",
        "3",
        "--sign",
        "-1",
        "--b",
        "0",
        "--arity",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(check(&report, "system")["detail"]["stage_orders"], json!([2, 4, 8]));
    let (code, _, _) = polyadic(&[
        "tower",
        "--kind",
        "cyclic_pk",
        "--p",
        "3",
        "--depth",
        "2",
        "--sign",
        "1",
        "--b",
        "0",
        "--arity",
        "3",
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = polyadic(&[
        "tower",
        "--kind",
        "cyclic_pk",
        "--p",
        "2",
        "--depth",
        "2",
        "--sign",
        "-1",
        "--b",
        "1",
        "--arity",
        "3",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn pretty_output_parses_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "p.json", &ternary_z3_plus_one());
    let (_, compact, _) = polyadic(&["verify", &file]);
    let (_, pretty, _) = polyadic(&["--pretty", "verify", &file]);
    assert_eq!(compact, pretty);
    let (_, timed, _) = polyadic(&["verify", &file, "--timing"]);
    assert!(timed["timing_ms"].is_u64());
    assert!(compact.get("timing_ms").is_none());
}
