use std::process::Command;

use serde_json::Value;

use iwachar::exactnum::{CycloNum, LaurentPoly};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

fn run(args: &[&str]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_iwachar")).args(args).output().expect("binary runs");
    Outcome {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8"),
        stderr: String::from_utf8(out.stderr).expect("utf8"),
    }
}

fn cyclo(v: &Value) -> CycloNum {
    serde_json::from_value(v.clone()).expect("cyclotomic number")
}

const S3: &str = r#"{"points": 3, "generators": [[1, 0, 2], [1, 2, 0]]}"#;
const C7: &str = r#"{"points": 7, "generators": [[1, 2, 3, 4, 5, 6, 0]]}"#;

#[test]
fn orbit_counts() {
    for (group, p, q, blocks) in [(S3, "3", "3", 2), (C7, "2", "2", 3), (C7, "2", "8", 7)] {
        let out = run(&["orbits", "--inline", group, "--p", p, "--q", q]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.json()["blocks"].as_array().unwrap().len(), blocks);
    }
    let out = run(&["orbits", "--inline", r#"{"points": 1, "generators": []}"#, "--p", "2", "--q", "2"]);
    assert_eq!(out.json()["orbit_count"], 1);
}

#[test]
fn usage_and_schema_errors_exit_2() {
    assert_eq!(run(&["orbits", "--inline", S3]).code, 2);
    assert_eq!(
        run(&["orbits", "--inline", r#"{"points": 3, "generators": [], "order": 1}"#, "--p", "2", "--q", "2"]).code,
        2
    );
    assert_eq!(run(&["orbits", "--inline", S3, "--p", "3", "--q", "4"]).code, 2);
    assert_eq!(run(&["example", "heisenberg(1,2,2)"]).code, 2);
    assert_eq!(run(&["rho", "--example", "heisenberg(1,3,3)"]).code, 2);
    let out = run(&["verify", "--which", "nonsense", "--example", "dihedral_abelian(3,3)"]);
    assert_eq!(out.code, 2);
    let diag: Value = serde_json::from_str(&run(&["example", "cyclic(0,2,2)"]).stderr).unwrap();
    assert_eq!(diag["exit_code"], 2);
}

#[test]
fn resource_bounds_exit_4() {
    let out = run(&["rho", "--example", "heisenberg(1,3,3)", "--module", "sym", "--cutoff", "3"]);
    assert_eq!(out.code, 4);
    let diag: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(diag["error"], "WindowTooSmall");
    assert_eq!(run(&["orbits", "--inline", C7, "--p", "2", "--q", "2", "--max-group-order", "5"]).code, 4);
}

#[test]
fn brauer_character_of_the_regular_representation() {
    let doc = r#"{"group": {"points": 2, "generators": [[1, 0]]}, "field": {"p": 3, "s": 1},
                  "matrices": [[[0, 1], [1, 0]]]}"#;
    let out = run(&["brauer", "--inline", doc]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let values = out.json()["values"].as_array().unwrap().clone();
    assert_eq!(cyclo(&values[0]["value"]), CycloNum::from_int(2, 2));
    assert!(cyclo(&values[1]["value"]).is_zero());
}

#[test]
fn psi_of_a_reflection() {
    let out = run(&["psi", "--example", "s3_reflection(3)"]);
    let rows = out.json()["rows"].as_array().unwrap().clone();
    let psi: LaurentPoly = serde_json::from_value(rows[1]["psi"].clone()).unwrap();
    assert_eq!(psi, LaurentPoly::from_ints(2, 0, &[1, 0, -1]));
    assert_eq!(rows[1]["centralizer_dim"], 1);
}

#[test]
fn verifications_pass_on_fixtures() {
    for which in ["main_formula", "key_formula", "vanishing"] {
        let out = run(&["verify", "--which", which, "--example", "heisenberg(1,3,3)"]);
        assert_eq!(out.code, 0, "{which}: {}", out.stderr);
        assert_eq!(out.json()["passed"], true);
    }
    let out = run(&["verify", "--which", "rank_bound", "--example", "dihedral_abelian(3,3)", "--i", "0"]);
    let report = &out.json()["report"];
    assert_eq!((report["rank"].as_u64(), report["bound"].as_u64()), (Some(1), Some(1)));

    let out = run(&["verify", "--which", "hall", "--inline", S3, "--p", "3", "--q", "3"]);
    assert_eq!(out.code, 0);
    let entries = out.json()["entries"].as_array().unwrap().clone();
    let a3 = entries.iter().find(|e| e["subgroup"].as_array().unwrap().len() == 3).expect("A3 is normal");
    assert_eq!(a3["report"]["pairs"].as_array().unwrap().len(), 2);
}

#[test]
fn explicit_rank_catalog_beyond_i_is_rejected() {
    let out = run(&["rank", "--example", "dihedral_abelian(3,3)", "--i", "0", "--modules", "sym,trivial"]);
    assert_eq!(out.code, 2);
    let out = run(&["rank", "--example", "heisenberg(1,3,3)", "--i", "1"]);
    let report = &out.json()["report"];
    assert_eq!((report["rank"].as_u64(), report["bound"].as_u64()), (Some(0), Some(1)));
}

#[test]
fn example_documents_drive_every_command() {
    let out = run(&["example", "heisenberg(1,3,3)"]);
    assert_eq!(out.code, 0);
    let doc = out.json();
    let module =
        doc["modules"].as_array().unwrap().iter().find(|m| m["name"] == "sym_mod_z").unwrap()["module"].to_string();
    let from_doc = run(&["rho", "--inline", &module]).json();
    let from_example = run(&["rho", "--example", "heisenberg(1,3,3)", "--module", "sym_mod_z"]).json();
    assert_eq!(from_doc["rows"], from_example["rows"]);
    assert!(from_doc["rows"].as_array().unwrap().iter().all(|r| cyclo(&r["rho"]).is_zero()));

    let model = doc["model"].to_string();
    assert_eq!(run(&["psi", "--inline", &model]).stdout, run(&["psi", "--example", "heisenberg(1,3,3)"]).stdout);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["tor", "--example", "s3_reflection(4)", "--module", "sym"][..],
        &["zeta", "--example", "klein_four(3,3)", "--module", "free"][..],
        &["verify", "--which", "properties", "--seed", "11"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&["verify", "--which", "properties", "--seed", "11", "--sequential"]);
    assert_eq!(a.stdout, run(&["verify", "--which", "properties", "--seed", "11"]).stdout);
}

#[test]
fn tables_render() {
    let out = run(&["orbits", "--inline", C7, "--p", "2", "--q", "2", "--format", "table"]);
    assert!(out.stdout.starts_with("|G| = 7, p = 2, q = 2, m = 7: 3 orbits"));
    let out = run(&["tor", "--example", "dihedral_abelian(3,3)", "--module", "trivial", "--format", "table"]);
    assert!(out.stdout.contains("square zero true, equivariant true"), "{}", out.stdout);
}
