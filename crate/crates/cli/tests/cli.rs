use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    p.to_str().expect("utf-8 path").to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dore")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn validate_text(text: &str) -> i32 {
    let dir = std::env::temp_dir().join(format!("dore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let path = dir.join(format!("{}.json", NEXT.fetch_add(1, Ordering::Relaxed)));
    std::fs::write(&path, text).unwrap();
    let c = code(&run(&["validate", path.to_str().unwrap()]));
    std::fs::remove_file(&path).unwrap();
    c
}

#[test]
fn validate_exit_codes_on_shipped_data() {
    let expected = [
        ("b2_q_123.json", 0),
        ("b2_gf2.json", 0),
        ("qplane_over_kx.json", 0),
        ("k_p21.json", 0),
        ("jordan.json", 0),
        ("b2_perturbed.json", 1),
        ("garbage.json", 2),
    ];
    for (name, want) in expected {
        let o = run(&["validate", &data(name)]);
        assert_eq!(code(&o), want, "{name}");
        let report: Value = serde_json::from_str(&stdout(&o)).expect("report on stdout");
        let status = ["valid", "invalid", "malformed"][want as usize];
        assert_eq!(report["status"], status, "{name}");
    }
}

#[test]
fn malformed_input_reports_on_stderr() {
    let o = run(&["validate", &data("garbage.json")]);
    assert!(!o.stderr.is_empty());
    let o = run(&["validate", "/nonexistent/spec.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn perturbed_report_names_failing_relations() {
    let o = run(&["validate", &data("b2_perturbed.json")]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks: Vec<&str> = report["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["check"].as_str().unwrap())
        .collect();
    assert!(checks.contains(&"R3.5"));
    assert!(checks.contains(&"overlap"));
}

#[test]
fn normal_forms() {
    let o = run(&["nf", &data("b2_q_123.json"), "--expr", "y2 y1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-y1*y2 + x^2\n");
    let o = run(&["nf", "b2", "--expr", "y1*x", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_form"], "1/2*x*y2 + 3*x^2");
    assert_eq!(v["terms"][0]["coefficient"], "3*x^2");
    assert_eq!(code(&run(&["nf", "b2", "--expr", "y1 w"])), 2);
    assert_eq!(code(&run(&["nf", &data("b2_perturbed.json"), "--expr", "y1"])), 1);
}

#[test]
fn analyze_reports() {
    let o = run(&["analyze", &data("b2_gf2.json")]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["directions"], serde_json::json!(["(1:1)"]));
    assert_eq!(v["detect_y1_first"]["presentable"], false);
    let hit = v["search"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["basis"] == serde_json::json!([["1", "1"], ["0", "1"]]))
        .expect("z1 = y1 + y2");
    assert_eq!(hit["presentation"]["d2"]["x"], "x*z1 + x^2");

    let v: Value = serde_json::from_str(&stdout(&run(&["analyze", "b2"]))).unwrap();
    assert_eq!(v["search"], serde_json::json!([]));
    assert_eq!(v["det_sigma"]["x"], "x");
    assert_eq!(v["classification"]["verdict"], "Unknown");
}

#[test]
fn transforms_close_the_pipeline() {
    for op in [&["swap"][..], &["newp-b"], &["gr"], &["basis", "[[1,0],[1,1]]"]] {
        let mut args = vec!["transform", "b2", "--op"];
        args.extend_from_slice(op);
        let o = run(&args);
        assert_eq!(code(&o), 0, "{op:?}");
        assert_eq!(validate_text(&stdout(&o)), 0, "{op:?}");
    }
    let o = run(&["transform", "b2", "--op", "basis", "[[2,1],[0,1]]"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("coefficient 2"));
    assert_eq!(code(&run(&["transform", "b2", "--op", "basis", "[[1,2],[2,4]]"])), 1);
    assert_eq!(code(&run(&["transform", "b2", "--op", "newp-a"])), 1);
    assert_eq!(code(&run(&["transform", "b2", "--op", "basis", "[[1]]"])), 2);
    assert_eq!(code(&run(&["transform", "b2", "--op", "spin"])), 2);
}

#[test]
fn examples_validate() {
    let cases: [&[&str]; 6] = [
        &["example", "b2"],
        &["example", "b2", "--field", "GF:3", "--a", "2", "--b", "1", "--c", "2"],
        &["example", "qplane", "--q", "-1/2"],
        &["example", "jordan", "--field", "GF:5"],
        &["example", "scalar", "--p12", "0", "--p11", "0"],
        &["example", "scalar", "--p12", "2", "--p11", "-1", "--tau", "5,7,3"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(validate_text(&stdout(&o)), 0, "{args:?}");
    }
    assert_eq!(code(&run(&["example", "b2", "--b", "0"])), 2);
    assert_eq!(code(&run(&["example", "b2", "--field", "GF:6"])), 2);
    assert_eq!(code(&run(&["example", "scalar", "--tau", "1,2"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["analyze", "b2"][..],
        &["analyze", "b2-gf2"],
        &["transform", "qplane", "--op", "swap"],
        &["validate", "jordan"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn shipped_specs_round_trip_through_example() {
    let o = run(&["example", "b2"]);
    let shipped = std::fs::read_to_string(data("b2_q_123.json")).unwrap();
    assert_eq!(stdout(&o), shipped);
}
