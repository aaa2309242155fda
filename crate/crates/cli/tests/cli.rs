use std::process::{Command, Output};

fn rubble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rubble")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = rubble(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn documented_examples() {
    let o = rubble(&["verify", "--family", "ladder", "--range", "2..6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("| yes |")).count(), 5);

    let v = json(&["optimal", "--graph", r#"{"family":"prism","n":3}"#]);
    assert_eq!(v["value"], 3);

    let o = rubble(&["reach", "--graph", "P3", "--dist", "[2,0,2]", "--target", "1"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn verify_json_rows() {
    let v = json(&["verify", "--family", "cycle_2opt", "--range", "3..6"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["match"] == true && r["formula_value"] == r["search_value"]));
    assert_eq!(v["complete"], true);
}

#[test]
fn witnesses_round_trip() {
    let v = json(&["witness", "--graph", "L5", "--all", "--format", "json"]);
    let witnesses = v["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        let text = serde_json::to_string(w).unwrap();
        let solved = json(&["solve", "--graph", "L5", "--dist", &text]);
        assert_eq!(solved["solvable"], true);
    }
}

#[test]
fn reach_witness_is_listed() {
    let v = json(&["reach", "--graph", "L3", "--dist", "[0,0,0,0,4,0]", "--target", "0", "--witness"]);
    assert_eq!(v["max_pebbles"], 1);
    assert!(!v["witness"].as_array().unwrap().is_empty());
}

#[test]
fn warm_cache_gives_identical_payloads() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let cache = cache.to_str().unwrap();
    let cold = rubble(&["--json", "--cache", cache, "optimal", "--graph", "PR5"]);
    let warm = rubble(&["--json", "--cache", cache, "optimal", "--graph", "PR5"]);
    let again = rubble(&["--json", "--cache", cache, "optimal", "--graph", "PR5"]);
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(stdout(&cold), stdout(&warm));
    assert_eq!(stdout(&warm), stdout(&again));
    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cache.json")).unwrap()).unwrap();
    let entry = &stored["PR5"][0];
    assert_eq!(entry["value"], 4);
    assert!(entry["engine_version"].as_str().unwrap().starts_with("rubbling-"));
}

#[test]
fn reduce_reports_certificate() {
    let v = json(&["reduce", "--graph", "L6", "--dist", "[0,0,2,0,1,0,0,1,0,0,1,0]"]);
    assert_eq!(v["instance"]["reduced_distribution"]["counts"].as_array().unwrap().len(), 6);
    assert!(v["instance"]["certificate"].is_string());
    assert_eq!(v["inequalities"]["modified"].as_array().unwrap().len(), 4);
    let o = rubble(&["reduce", "--graph", "PR6", "--dist", "[0,0,0,0,0,0,0,0,0,0,0,0]"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dot_output_labels_counts() {
    let o = rubble(&["witness", "--graph", "P3"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("1 [label=\"1:2\"]"));
}

#[test]
fn transforms() {
    let v = json(&["smooth", "--graph", "C4", "--dist", "[3,0,0,0]", "--vertex", "0"]);
    assert_eq!(v["distribution"]["counts"], serde_json::json!([1, 1, 0, 1]));
    let v = json(&["collapse", "--graph", "PR4", "--dist", "[1,1,0,0,0,0,0,0]"]);
    assert_eq!(v["distribution"]["counts"], serde_json::json!([2, 0, 0, 0]));
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 4);
    let v = json(&["collapse", "--graph", "P4", "--dist", "[1,0,0,1]", "--blocks", "[[0],[1,2],[3]]"]);
    assert_eq!(v["distribution"]["counts"], serde_json::json!([1, 0, 1]));
}

#[test]
fn seeded_random_distributions_are_reproducible() {
    let a = json(&["--seed", "7", "smooth", "--graph", "C6", "--dist", "random:5"]);
    let b = json(&["--seed", "7", "smooth", "--graph", "C6", "--dist", "random:5"]);
    assert_eq!(a, b);
    let total: u64 = a["distribution"]["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 5);
}

#[test]
fn threads_and_sequential_flags() {
    let par = json(&["--threads", "2", "optimal", "--graph", "L5"]);
    let seq = json(&["--sequential", "optimal", "--graph", "L5"]);
    assert_eq!(par["witness"], seq["witness"]);
    assert_eq!(rubble(&["--threads", "0", "optimal", "--graph", "L2"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    let cases: [&[&str]; 6] = [
        &["reach", "--graph", "{\"family\":", "--dist", "[1]", "--target", "0"],
        &["reach", "--graph", "P3", "--dist", "[1,2]", "--target", "0"],
        &["reach", "--graph", "P3", "--dist", "[1,0,0]", "--target", "9"],
        &["verify", "--family", "ladder", "--range", "6..2"],
        &["verify", "--family", "cube", "--range", "2..3"],
        &["nonsense"],
    ];
    for args in cases {
        let o = rubble(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(rubble(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_marks_rows_incomplete() {
    let v = json(&["verify", "--family", "prism", "--range", "3..4", "--budget", "0"]);
    assert_eq!(v["complete"], false);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["status"] == "incomplete"));
}
