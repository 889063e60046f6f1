use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubeplan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cube_counts_match_golden() {
    let out = run(&["count", "cubes", "--type", "quadrant", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("count_cubes_quadrant_4.csv"));
    let out = run(&["count", "cubes", "--type", "strip", "--n", "6"]);
    assert_eq!(stdout(&out), golden("count_cubes_strip_6.csv"));
}

#[test]
fn state_counts() {
    let out = run(&["count", "states", "--type", "strip", "--n", "10"]);
    assert_eq!(stdout(&out), "n,states\n10,144\n");
    let out = run(&["count", "states", "--type", "quadrant", "--n", "7"]);
    assert_eq!(stdout(&out), "n,states\n7,128\n");
}

#[test]
fn plan_matches_golden() {
    let out = run(&["robot", "plan", "--type", "quadrant", "--n", "2", "--from", "", "--to", "12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("plan_qr2_steps.txt"));
    let out = run(&["robot", "plan", "--type", "quadrant", "--n", "2", "--from", "", "--to", "12", "--json"]);
    assert_eq!(stdout(&out), golden("plan_qr2_steps.json"));
}

#[test]
fn pip_export_matches_golden() {
    let out = run(&["pip", "export", "--type", "strip", "--n", "4"]);
    assert_eq!(stdout(&out), golden("pip_strip_4.json"));
}

#[test]
fn output_is_deterministic() {
    let args = ["robot", "plan", "--type", "strip", "--n", "8", "--from", "2468", "--to", "1357", "--metric", "moves", "--enumerate", "--json"];
    let first = stdout(&run(&args));
    assert!(!first.is_empty());
    for _ in 0..3 {
        assert_eq!(stdout(&run(&args)), first);
    }
    let sys = ["system", "export", "--type", "snake", "--length", "2", "--rows", "2", "--cols", "3"];
    assert_eq!(stdout(&run(&sys)), stdout(&run(&sys)));
}

#[test]
fn verified_plan_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    for metric in ["moves", "steps", "time"] {
        let out = run(&["robot", "plan", "--type", "strip", "--n", "7", "--from", "246", "--to", "135", "--metric", metric, "--json", "--verify"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let plan = write(&dir, "plan.json", &stdout(&out));
        let out = run(&["robot", "verify", arg(&plan)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn tampered_plans_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["robot", "plan", "--type", "quadrant", "--n", "5", "--from", "", "--to", "1245", "--json"]);
    let plan: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let steps = plan["steps"].as_array().unwrap().clone();
    assert!(steps.len() >= 3);

    let mut mutants = Vec::new();
    // drop a stage
    let mut m = plan.clone();
    m["steps"].as_array_mut().unwrap().remove(1);
    mutants.push(m);
    // swap two stages
    let mut m = plan.clone();
    m["steps"].as_array_mut().unwrap().swap(0, 1);
    mutants.push(m);
    // wrong length
    let mut m = plan.clone();
    m["length"] = serde_json::json!(steps.len() + 1);
    mutants.push(m);
    // unknown move
    let mut m = plan.clone();
    m["steps"][0] = serde_json::json!(["hop_left@9"]);
    mutants.push(m);
    // wrong goal
    let mut m = plan.clone();
    m["goal"] = serde_json::json!("12");
    mutants.push(m);
    // padded with a move and its inverse: reaches the goal but is not optimal
    let mut m = plan.clone();
    let arr = m["steps"].as_array_mut().unwrap();
    arr.insert(0, serde_json::json!(["enter@5"]));
    arr.insert(1, serde_json::json!(["leave@5"]));
    m["length"] = serde_json::json!(arr.len());
    mutants.push(m);

    for (k, m) in mutants.iter().enumerate() {
        let path = write(&dir, &format!("m{k}.json"), &serde_json::to_string(m).unwrap());
        let out = run(&["robot", "verify", arg(&path)]);
        assert_eq!(out.status.code(), Some(2), "mutant {k} accepted");
    }
}

#[test]
fn reroot_at_empty_ideal_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["pip", "export", "--type", "strip", "--n", "5"]);
    let pip = write(&dir, "p.json", &stdout(&out));
    let shown = run(&["pip", "show", arg(&pip), "--json"]);
    let rerooted = run(&["pip", "reroot", arg(&pip), "--at", "", "--json"]);
    assert!(rerooted.status.success());
    assert_eq!(rerooted.stdout, shown.stdout);
}

#[test]
fn reroot_twice_at_transported_ideal_returns() {
    let dir = tempfile::tempdir().unwrap();
    let pip = write(
        &dir,
        "p.json",
        r#"{"elements":["a","b","c","d"],"covers":[["a","b"],["c","d"]],"inconsistent":[["b","c"]]}"#,
    );
    let once = run(&["pip", "reroot", arg(&pip), "--at", "a,b", "--json"]);
    assert!(once.status.success(), "{}", String::from_utf8_lossy(&once.stderr));
    let p1 = write(&dir, "p1.json", &stdout(&once));
    // {a,b} transports to itself in the rerooted PIP; rerooting there comes back
    let twice = run(&["pip", "reroot", arg(&p1), "--at", "a,b", "--json"]);
    assert!(twice.status.success(), "{}", String::from_utf8_lossy(&twice.stderr));
    let shown = run(&["pip", "show", arg(&pip), "--json"]);
    assert_eq!(twice.stdout, shown.stdout);
}

#[test]
fn pip_validation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write(&dir, "c.json", r#"{"elements":["a","b"],"covers":[["a","b"],["b","a"]],"inconsistent":[]}"#);
    assert_eq!(run(&["pip", "validate", arg(&cyclic)]).status.code(), Some(2));
    let comparable = write(&dir, "i.json", r#"{"elements":["a","b"],"covers":[["a","b"]],"inconsistent":[["a","b"]]}"#);
    assert_eq!(run(&["pip", "validate", arg(&comparable)]).status.code(), Some(2));
    // {a,c} inconsistent forces {a,d}; literal mode wants it listed
    let open = write(
        &dir,
        "o.json",
        r#"{"elements":["a","b","c","d"],"covers":[["c","d"]],"inconsistent":[["a","c"]]}"#,
    );
    assert_eq!(run(&["pip", "validate", arg(&open)]).status.code(), Some(0));
    assert_eq!(run(&["pip", "validate", arg(&open), "--literal"]).status.code(), Some(2));
    let bad_json = write(&dir, "b.json", "{");
    assert_eq!(run(&["pip", "show", arg(&bad_json)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["pip", "show", arg(&missing)]).status.code(), Some(1));
}

#[test]
fn invalid_requests_exit_2() {
    let unsupported = run(&["robot", "plan", "--type", "quadrant", "--n", "3", "--from", "1", "--to", "2", "--metric", "euclidean"]);
    assert_eq!(unsupported.status.code(), Some(2));
    let bad_state = run(&["robot", "plan", "--type", "strip", "--n", "4", "--from", "12", "--to", "2"]);
    assert_eq!(bad_state.status.code(), Some(2));
    let out_of_range = run(&["robot", "plan", "--type", "quadrant", "--n", "3", "--from", "4", "--to", "2"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = run(&["count", "states", "--type", "quadrant", "--n", "6", "--state-cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["robot", "plan", "--type", "quadrant", "--n", "5", "--from", "", "--to", "12345", "--metric", "moves", "--enumerate", "--plan-cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn snakes_are_not_cat0() {
    let dir = tempfile::tempdir().unwrap();
    for (rows, cols) in [(1, 6), (3, 5)] {
        let out = run(&["system", "export", "--type", "snake", "--length", "1", "--rows", &rows.to_string(), "--cols", &cols.to_string()]);
        let sys = write(&dir, "snake.json", &stdout(&out));
        let out = run(&["complex", "check-cat0", "--system", arg(&sys)]);
        assert_eq!(out.status.code(), Some(4));
        let text = stdout(&out);
        assert!(text.contains("unfilled 4-cycle"), "{text}");
    }
}

#[test]
fn arm_systems_are_cat0() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["quadrant", "strip"] {
        let out = run(&["system", "export", "--type", kind, "--n", "4"]);
        let sys = write(&dir, "arm.json", &stdout(&out));
        let out = run(&["complex", "check-cat0", "--system", arg(&sys), "--json"]);
        assert!(out.status.success());
        let pip: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let expected = if kind == "quadrant" { 10 } else { 6 };
        assert_eq!(pip["elements"].as_array().unwrap().len(), expected);
    }
}

#[test]
fn f_vector_of_exported_system_agrees_with_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["system", "export", "--type", "quadrant", "--n", "4"]);
    let sys = write(&dir, "q.json", &stdout(&out));
    let f = stdout(&run(&["complex", "f-vector", "--system", arg(&sys)]));
    let counts = stdout(&run(&["count", "cubes", "--type", "quadrant", "--n", "4"]));
    let from_counts: Vec<String> = counts
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().to_string())
        .filter(|c| c != "0")
        .collect();
    let from_f: Vec<String> = f.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(from_f, from_counts);
}
