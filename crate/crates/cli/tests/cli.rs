use std::process::{Command, Output};

use flagorbits::sp2::{closure_diagram, flag_of, parse_dot, representative, Orbit};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagorbits"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn roots_of_c2() {
    let v = json(&["roots", "--family", "C", "--rank", "2", "--json"]);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 8);
    for r in [["2/1", "0/1"], ["0/1", "-2/1"], ["1/1", "1/1"], ["-1/1", "1/1"]] {
        assert!(roots.contains(&serde_json::json!(r)), "{r:?} missing from {roots:?}");
    }
    assert!(stdout(&run(&["roots", "--family", "C", "--rank", "2"])).starts_with("8 roots"));
}

#[test]
fn weyl_group_order_and_element() {
    assert_eq!(json(&["weyl", "--rank", "3", "--json"])["order"], 48);
    let v = json(&["weyl", "--w", "-2,1", "--json"]);
    assert_eq!(v["inverse"], serde_json::json!({"perm": [2, 1], "signs": [1, -1]}));
}

#[test]
fn verify_table_matches_all() {
    let o = run(&["sp2", "verify-table"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("11/11 matched"));
}

#[test]
fn descriptor_verbs() {
    let v = json(&["descriptor", "boundary", "--gamma", "e1+e2", "--json"]);
    assert_eq!(v["s1"]["betaPrefix"], serde_json::json!(["0/1", "2/1"]));
    let v = json(&["descriptor", "inequality", "--gamma", "2e1,2e2", "--theta", "e1-e2", "--json"]);
    assert_eq!(v["certificate"]["gap"], "1/2");
    let v = json(&["descriptor", "certify", "--gamma", "2e2", "--theta", "2e2", "--json"]);
    assert_eq!(v["nonClosed"], false);
    assert_eq!(run(&["descriptor", "normalize", "--gamma", "2e2", "--theta", "2e2"]).status.code(), Some(1));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["roots", "--family", "D"]).status.code(), Some(2));
    assert_eq!(run(&["sp2", "search", "--claim", "9.9"]).status.code(), Some(2));
    assert_eq!(run(&["descriptor", "normalize", "--gamma", "e1-e2"]).status.code(), Some(2));
    assert_eq!(run(&["sp2", "frobnicate"]).status.code(), Some(2));
    let o = run(&["weyl", "--w", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--w"));
}

#[test]
fn search_is_deterministic_per_seed() {
    let args = ["sp2", "search", "--claim", "3.3", "--seed", "7", "--tol", "1e-6", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["classifiedAs"], "S'op");
    assert!(v["violation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn diagram_dot_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbits.dot");
    let o = run(&["sp2", "diagram", "--dot", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse_dot(&text).unwrap(), closure_diagram());
    let stdout_dot = stdout(&run(&["sp2", "diagram"]));
    assert_eq!(stdout_dot, text);
}

#[test]
fn saturation_sampling_is_deterministic() {
    let args = ["sp2", "diagram", "--samples", "40", "--seed", "3", "--json"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
}

#[test]
fn classify_flag_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flag.json");
    std::fs::write(&path, serde_json::to_string(&flag_of(&representative(Orbit::S10).1)).unwrap()).unwrap();
    let v = json(&["sp2", "classify", "--flag", path.to_str().unwrap(), "--json"]);
    assert_eq!((v["kc"].as_str(), v["gr"].as_str()), (Some("S10"), Some("S'10")));
    std::fs::write(&path, "{\"v1\": []}").unwrap();
    assert_eq!(run(&["sp2", "classify", "--flag", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn dims_strata_and_lift() {
    let v = json(&["sp2", "dims", "--json"]);
    let dims: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4]);
    let v = json(&["sp2", "strata", "--s1", "0.5", "--s2", "-0.7", "--seed", "9", "--json"]);
    assert_eq!(v["inDomain"], true);
    let v = json(&["sp2", "strata", "--s1", "0.785398163397448", "--json"]);
    assert_eq!(v["inDomain"], false);
    assert_eq!(json(&["sp2", "lift", "--orbit", "S7", "--json"])["parabolics"], serde_json::json!([2, 1]));
    assert_eq!(run(&["sp2", "lift", "--orbit", "S'7"]).status.code(), Some(2));
}
