use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use isl::semantics::validate_model;
use isl::{parse_sequent, G3Proof, KripkeModel, Profile};
use serde_json::{json, Value};

fn isl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn prove_strong_lob() {
    let o = isl(&["prove", "=> ([]p -> p) -> p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "provable");
}

#[test]
fn prove_writes_checkable_proofs() {
    let dir = tempfile::tempdir().unwrap();
    for profile in ["core", "b-variant", "glc-variant"] {
        let file = dir.path().join(format!("{}.json", profile));
        let o = isl(&["prove", "=> [](p -> q) -> []p -> []q", "--proof", path(&file), "--calculus-profile", profile]);
        assert_eq!(o.status.code(), Some(0));
        let (p, prof) = G3Proof::from_json(&read(&file)).unwrap();
        isl::g3::check_g3_proof(&p, prof).unwrap();
        assert_eq!(p.sequent(), parse_sequent("=> [](p -> q) -> []p -> []q").unwrap());
    }
}

#[test]
fn countermodel_file_validates_and_refutes() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let dot = dir.path().join("m.dot");
    let o = isl(&["prove", "=> []p -> p", "--countermodel", path(&m), "--dot", path(&dot)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not provable"));
    let v = read(&m);
    let model = KripkeModel::from_json(&v).unwrap();
    assert!(validate_model(&model).is_empty());
    let w = model.world(v["designated"].as_str().unwrap()).unwrap();
    assert!(model.refuting_worlds(&parse_sequent("=> []p -> p").unwrap()).contains(&w));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let o = isl(&["check-model", path(&m), "=> []p -> p"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("refuted at"));
}

#[test]
fn malformed_sequent_is_a_usage_error() {
    let o = isl(&["prove", "p => q, r"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('^'));
}

#[test]
fn check_model_reports() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.json");
    fs::write(&f, json!({"worlds": ["a"], "val": {"a": []}}).to_string()).unwrap();
    let o = isl(&["check-model", path(&f), "=> p"]);
    assert_eq!(stdout(&o).trim(), "refuted at a");
    let o = isl(&["check-model", path(&f), "p => p"]);
    assert_eq!(stdout(&o).trim(), "valid in model");

    fs::write(&f, json!({"worlds": ["a", "b"], "le": [["a", "b"], ["b", "a"]], "r": [["a", "b"], ["b", "a"]]}).to_string())
        .unwrap();
    let o = isl(&["check-model", path(&f), "=> p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cycle"));

    fs::write(&f, "{ not json").unwrap();
    assert_eq!(isl(&["check-model", path(&f), "=> p"]).status.code(), Some(2));
}

#[test]
fn cut_elim_on_cut_free_input_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(isl(&["prove", "=> []([]p -> p) -> []p", "--proof", path(&a)]).status.code(), Some(0));
    let o = isl(&["cut-elim", path(&a), "--proof", path(&b)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("reductions 0"));
    assert_eq!(read(&a), read(&b));
}

#[test]
fn cut_elim_on_translated_proofs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for s in ["=> ([]p -> p) -> p", "p -> q -> r => p & q -> r", "(p | q) -> r => p -> r"] {
        assert_eq!(isl(&["prove", s, "--proof", path(&a), "--with-cuts"]).status.code(), Some(0));
        let o = isl(&["cut-elim", path(&a), "--proof", path(&b)]);
        assert_eq!(o.status.code(), Some(0), "{}", s);
        let (p, prof) = G3Proof::from_json(&read(&b)).unwrap();
        assert_eq!(prof, Profile::Core);
        assert!(p.is_cut_free());
        isl::g3::check_g3_proof(&p, Profile::Core).unwrap();
        assert_eq!(p.sequent(), parse_sequent(s).unwrap());
    }
}

#[test]
fn atom_cut_takes_one_reduction() {
    let proof = json!({
        "rule": "Cut", "sequent": "p, q => p", "ids": [1, 2], "succ_id": 10, "principal": 4,
        "profile": "with_cut",
        "premises": [
            {"rule": "At", "sequent": "p => p", "ids": [1], "succ_id": 3, "principal": 1, "premises": []},
            {"rule": "At", "sequent": "q, p => p", "ids": [2, 4], "succ_id": 10, "principal": 4, "premises": []}
        ]
    });
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cut.json");
    fs::write(&f, proof.to_string()).unwrap();
    let o = isl(&["cut-elim", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("reductions 1"));
    assert_eq!(out.lines().nth(1).map(str::trim), Some("(1, 0, 2)"));
}

#[test]
fn cut_elim_rejects_invalid_proofs() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    let bad = json!({"rule": "At", "sequent": "q => p", "ids": [1], "succ_id": 2, "principal": 1, "premises": []});
    fs::write(&f, bad.to_string()).unwrap();
    assert_eq!(isl(&["cut-elim", path(&f)]).status.code(), Some(2));
}

#[test]
fn interpolate_splits() {
    let o = isl(&["interpolate", "p & q ; q -> r => r"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q");
    assert_eq!(isl(&["interpolate", "p ; => q"]).status.code(), Some(1));
    assert_eq!(isl(&["interpolate", "p => q"]).status.code(), Some(2));
}

#[test]
fn fuzz_is_clean_and_deterministic() {
    let args = ["fuzz", "--seed", "1", "--count", "100", "--max-weight", "12", "--atoms", "2"];
    let a = isl(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert!(stdout(&a).contains("0 discrepancies"));
    let b = isl(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(isl(&["fuzz", "--count", "0"]).status.code(), Some(2));
    assert_eq!(isl(&["prove"]).status.code(), Some(2));
    assert_eq!(isl(&["check-model", "/nonexistent/m.json", "=> p"]).status.code(), Some(2));
}
