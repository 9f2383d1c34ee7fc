use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brickforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn classify_prints_state_blocks_and_sizes() {
    let o = run(&["classify", "--curve", "I3", "--rank", "4", "--degree", "1,1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "A+, I=(1,2,3,5), s=(1,1,1,1)");
}

#[test]
fn classify_worked_example_matches_golden() {
    let o = run(&["classify", "--curve", "I2", "--rank", "9", "--degree", "3,2"]);
    assert_eq!(stdout(&o), golden("i2_r9_d3-2_classify.txt"));
}

#[test]
fn verify_cusp_at_zero() {
    let o = run(&["verify", "--curve", "II", "--rank", "2", "--degree", "1", "--lambda", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "End=1, brick=true\n");
    let o = run(&["verify", "--curve", "I1", "--rank", "2", "--degree", "1", "--lambda", "2", "--lambda2", "3"]);
    assert_eq!(stdout(&o), "End=1, brick=true\nHom12=0, Hom21=0\n");
}

#[test]
fn latex_build_is_byte_stable() {
    let args = ["build", "--curve", "I2", "--rank", "9", "--degree", "3,2", "--lambda", "1", "--format", "latex"];
    let first = stdout(&run(&args));
    assert_eq!(first, golden("i2_r9_d3-2.tex"));
    assert_eq!(stdout(&run(&args)), first);
    let tacnode = ["build", "--curve", "III", "--rank", "9", "--degree", "3,2", "--lambda", "1", "--format", "latex"];
    assert_eq!(stdout(&run(&tacnode)), golden("iii_r9_d3-2.tex"));
}

#[test]
fn text_build_shows_the_matrix() {
    let o = run(&["build", "--curve", "III", "--rank", "9", "--degree", "3,2", "--lambda", "2", "--diagonal"]);
    assert!(stdout(&o).contains(&golden("iii_r9_d3-2_diagonal.txt")));
}

#[test]
fn build_json_carries_rationals_on_the_wire() {
    let v = json(&["build", "--curve", "I1", "--rank", "2", "--degree", "1", "--lambda", "-6/4"]);
    assert_eq!(v["kind"], "build");
    assert_eq!(v["lambda"], "-3/2");
    assert_eq!(v["matrix"]["entries"], serde_json::json!([["0/1", "1/1"], ["-3/2", "0/1"]]));
    assert_eq!(v["matrix"]["symbolic"], serde_json::json!([["0", "1"], ["λ", "0"]]));
    let mats = v["triple"]["matrices"].as_array().unwrap();
    assert_eq!(mats.len(), 2);
    assert_eq!(mats[1]["slot"], "muInf");
    assert_eq!(v["triple"]["multidegree"], serde_json::json!([1]));
}

#[test]
fn non_coprime_exits_with_two() {
    let o = run(&["build", "--curve", "I1", "--rank", "4", "--degree", "2", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gcd = 2"), "{}", stderr(&o));
    let o = run(&["classify", "--curve", "I2", "--rank", "6", "--degree", "2,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("gcd(r,d) = 2"));
}

#[test]
fn invalid_parameters_exit_with_three() {
    for args in [
        vec!["build", "--curve", "I1", "--rank", "2", "--degree", "1", "--lambda", "0"],
        vec!["build", "--curve", "I2", "--rank", "3", "--degree", "1", "--lambda", "1"],
        vec!["build", "--curve", "I2", "--rank", "3", "--degree", "1,1", "--lambda", "x"],
        vec!["tensor", "--curve", "I1", "--rank", "2", "--degree", "1", "--lambda", "1", "--mu", "0"],
        vec!["classify", "--curve", "I1", "--rank", "2", "--degree", "1", "--format", "latex"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn tensor_reports_both_laws() {
    let o = run(&["tensor", "--curve", "I2", "--rank", "3", "--degree", "1,1", "--lambda", "2", "--mu", "3"]);
    assert_eq!(stdout(&o), "λμ^r=54, recanonicalized=54\n");
    let o = run(&["tensor", "--curve", "III", "--rank", "3", "--degree", "1,1", "--lambda", "1", "--mu", "1/3", "--stabilizer"]);
    assert_eq!(stdout(&o), "λ+rμ=2, recanonicalized=2\nstabilizer over Q: {0}, order 1 (expected 1), pass\n");
    let v = json(&["tensor", "--curve", "I1", "--rank", "3", "--degree", "1", "--lambda", "1", "--mu", "2", "--stabilizer", "--triple"]);
    assert_eq!(v["parameter"], "8/1");
    assert_eq!(v["stabilizer"]["prime"], 7);
    assert_eq!(v["stabilizer"]["elements"], serde_json::json!(["1", "2", "4"]));
    assert_eq!(v["triple"]["lambda"], "8/1");
}

#[test]
fn automaton_graph_json() {
    let v = json(&["emit-automaton", "--curve", "I2"]);
    assert_eq!(v["curve"], "I2");
    assert_eq!(v["states"].as_array().unwrap().len(), 3);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 6);
    let text = stdout(&run(&["emit-automaton", "--curve", "IV"]));
    assert_eq!(text, golden("automaton_iv.txt"));
}

#[test]
fn sweep_respects_the_worker_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_brickforge"))
        .args(["sweep", "--max-rank", "4", "--oracle-rank", "3"])
        .env("BRICKFORGE_SWEEP_JOBS", "2")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("all checks pass\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_brickforge"))
        .args(["sweep", "--max-rank", "2"])
        .env("BRICKFORGE_SWEEP_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_json_lists_every_curve() {
    let v = json(&["sweep", "--max-rank", "3", "--curves", "I1,IV"]);
    let curves = v["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 2);
    assert!(curves.iter().all(|c| c["pass"] == true));
}

#[test]
fn output_flag_writes_the_artifact() {
    let path = std::env::temp_dir().join(format!("brickforge-{}.tex", std::process::id()));
    let o = run(&[
        "build", "--curve", "I2", "--rank", "9", "--degree", "3,2", "--lambda", "1", "--format", "latex", "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("i2_r9_d3-2.tex"));
    std::fs::remove_file(path).unwrap();
}

fn schema() -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema.json");
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Checks required keys and the closed key set of every object the schema
/// describes by a local reference.
fn conforms(doc: &Value, def: &Value, defs: &Value, at: &str) {
    if let Some(r) = def.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        if name == "rational" {
            let s = doc.as_str().unwrap_or_else(|| panic!("{at}: rational is not a string"));
            let (num, den) = s.split_once('/').unwrap_or_else(|| panic!("{at}: {s} is not p/q"));
            assert!(num.parse::<i64>().is_ok() && den.parse::<u64>().unwrap() > 0, "{at}: {s}");
            return;
        }
        return conforms(doc, &defs[name], defs, &format!("{at}/{name}"));
    }
    if let Some(alts) = def.get("oneOf").and_then(Value::as_array) {
        if doc.is_null() {
            return;
        }
        let obj = alts.iter().find(|a| a.get("$ref").is_some()).unwrap();
        return conforms(doc, obj, defs, at);
    }
    if let (Some(props), Some(map)) = (def.get("properties").and_then(Value::as_object), doc.as_object()) {
        for key in def["required"].as_array().into_iter().flatten() {
            assert!(map.contains_key(key.as_str().unwrap()), "{at}: missing {key}");
        }
        for (k, v) in map {
            let sub = props.get(k).unwrap_or_else(|| panic!("{at}: unexpected key {k}"));
            conforms(v, sub, defs, &format!("{at}.{k}"));
        }
    }
    if let (Some(items), Some(arr)) = (def.get("items"), doc.as_array()) {
        for v in arr {
            conforms(v, items, defs, at);
        }
    }
}

#[test]
fn documents_follow_the_published_schema() {
    let schema = schema();
    let defs = &schema["$defs"];
    for args in [
        vec!["classify", "--curve", "I2", "--rank", "9", "--degree", "3,2"],
        vec!["classify", "--curve", "I2", "--rank", "4", "--degree", "2,2"],
        vec!["build", "--curve", "IV", "--rank", "5", "--degree", "1,1,1", "--lambda", "1/2", "--diagonal"],
        vec!["verify", "--curve", "III", "--rank", "3", "--degree", "1,1", "--lambda", "1", "--lambda2", "2"],
        vec!["tensor", "--curve", "I3", "--rank", "4", "--degree", "1,1,1", "--lambda", "1", "--mu", "2", "--stabilizer", "--triple"],
        vec!["sweep", "--max-rank", "3", "--curves", "II"],
        vec!["emit-automaton", "--curve", "I3"],
    ] {
        let mut all = args.clone();
        all.extend(["--format", "json"]);
        let doc: Value = serde_json::from_str(&stdout(&run(&all))).unwrap();
        let kind = doc["kind"].as_str().unwrap().to_string();
        conforms(&doc, &defs[&kind], defs, &kind);
    }
}
