use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_degree-forge"));
    c.env_remove("DEGREE_FORGE_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(x) => !x.is_f64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

fn keys_sorted(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(keys_sorted),
        Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        _ => true,
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&run(&[
            "bounds", "--id", "EKR", "--n", "7", "--k", "3", "--t", "1"
        ])),
        0
    );
    assert_eq!(
        code(&run(&["bounds", "--id", "NOPE", "--n", "7", "--k", "3"])),
        2
    );
    assert_eq!(
        code(&run(&["bounds", "--id", "EKR", "--n", "7", "--k", "3"])),
        2
    );
    assert_eq!(code(&run(&["search", "--n", "20", "--k", "6"])), 2);
    assert_eq!(code(&run(&["degrees", "--in", "/nonexistent/family"])), 2);
    assert_eq!(
        code(&run(&[
            "construct",
            "--kind",
            "blob",
            "--n",
            "7",
            "--k",
            "3"
        ])),
        2
    );
    assert_eq!(code(&run(&["sweep", "--id", "I41", "--grid", "k=3..x"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn parse_errors_name_the_line() {
    let o = run_stdin(&["degrees"], "4 2\n1,2\n1,9\n");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn construct_round_trips_through_degrees() {
    let fam = run(&["construct", "--kind", "triangle", "--n", "7", "--k", "3"]);
    assert_eq!(code(&fam), 0);
    let text = stdout(&fam);
    assert!(text.starts_with("7 3\n"));
    let again = run_stdin(&["shift"], &text);
    assert_eq!(code(&again), 0);
    let deg = run_stdin(&["degrees"], &text);
    let v = json(&deg);
    assert_eq!(v["degrees"], serde_json::json!([9, 9, 9, 3, 3, 3, 3]));
    assert_eq!(v["size"], 13);
}

#[test]
fn star_needs_a_centre() {
    assert_eq!(
        code(&run(&[
            "construct",
            "--kind",
            "star",
            "--n",
            "7",
            "--k",
            "3"
        ])),
        2
    );
    let o = run(&[
        "construct",
        "--kind",
        "star",
        "--n",
        "5",
        "--k",
        "2",
        "--param",
        "1",
    ]);
    assert_eq!(stdout(&o), "5 2\n1,2\n1,3\n1,4\n1,5\n");
}

#[test]
fn verify_reports_a_verdict() {
    let o = run(&["verify", "--id", "D2", "--n", "7", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["equality"]["ok"], true);
    assert!(no_floats(&v) && keys_sorted(&v));
}

#[test]
fn bounds_outside_hypothesis_are_inapplicable() {
    let o = run(&["bounds", "--id", "HZ", "--n", "6", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["applicable"], false);
    assert!(v["reason"].as_str().unwrap().contains("n >"));
}

#[test]
fn reports_are_byte_reproducible() {
    let args = ["search", "--n", "7", "--k", "3", "--classes"];
    let a = run(&args);
    let b = bin()
        .args(args)
        .env("DEGREE_FORGE_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(no_floats(&v) && keys_sorted(&v));
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn timing_adds_wall_time() {
    let o = run(&[
        "--timing", "bounds", "--id", "EKR", "--n", "7", "--k", "3", "--t", "1",
    ]);
    assert!(json(&o)["wall_time_ms"].is_u64());
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = run(&[
        "search",
        "--n",
        "7",
        "--k",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("i,max_degree\n1,15\n2,9\n"));
}

#[test]
fn transversal_basis_of_a_triangle() {
    let fam = stdout(&run(&[
        "construct",
        "--kind",
        "triangle",
        "--n",
        "6",
        "--k",
        "3",
    ]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.fam");
    std::fs::write(&path, fam).unwrap();
    let v = json(&run(&[
        "transversal",
        "--t",
        "1",
        "--in",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["basis"], serde_json::json!(["1,2", "1,3", "2,3"]));
    assert_eq!(v["tau"], 2);
}

#[test]
fn crosscheck_reads_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    std::fs::write(&a, "5 2\n1,2\n1,3\n").unwrap();
    std::fs::write(&b, "5 2\n1,4\n2,3\n").unwrap();
    let o = run(&[
        "crosscheck",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["cross"], true);
}

#[test]
fn empty_sweep_passes() {
    let o = run(&["sweep", "--id", "LvsH4", "--grid", "k=5..5,n=13..13"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["pass"], true);
}

#[test]
fn text_format_lists_fields() {
    let o = run(&[
        "--format", "text", "bounds", "--id", "EKR", "--n", "7", "--k", "3", "--t", "1",
    ]);
    assert!(stdout(&o).lines().any(|l| l == "applicable: true"));
}
