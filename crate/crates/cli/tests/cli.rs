use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer-cone")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn model_minus_e5_has_eleven_generators() {
    let text = stdout(&["model", "--minus-en", "5"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["generators"].as_array().unwrap().len(), 11);
    assert_eq!(value["differential"].as_array().unwrap().len(), 2 + 4 * 2);
}

#[test]
fn dgs_minus_one() {
    let value: serde_json::Value = serde_json::from_str(&stdout(&["dgs", "--r", "-1"])).unwrap();
    assert_eq!(value["a"], serde_json::json!([-2]));
    assert_eq!(value["stabilizations"], serde_json::json!([0]));
}

#[test]
fn dgs_positive_side() {
    let value: serde_json::Value = serde_json::from_str(&stdout(&["dgs", "--r", "4/3"])).unwrap();
    assert_eq!(value["e"], 1);
    assert_eq!(value["stabilizations"], serde_json::json!([3]));
}

#[test]
fn pipeline_minus_three() {
    let text = stdout(&["pipeline", "--n", "5", "--r", "-3"]);
    assert!(text.trim_end().ends_with("distinct: yes (case ii, k=1)"), "{text}");
    let json = stdout(&["pipeline", "--n", "5", "--r", "-3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["verdict"], "distinct: yes (case ii, k=1)");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["pipeline", "--n", "5", "--r", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["pipeline", "--n", "5", "--r", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["model", "--minus-en", "4"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "/definitely/not/here.json"]).status.code(), Some(2));
    assert_eq!(run(&["surgery", "--staircase", "--p", "0"]).status.code(), Some(1));
}

#[test]
fn validate_accepts_emitted_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("model.json", vec!["model", "--minus-en", "7", "--mirror"]),
        ("surgery.json", vec!["surgery", "--staircase", "--p", "-3", "--q", "2", "--truncate"]),
        ("infinity.json", vec!["surgery", "--box", "--p", "2", "--flavor", "infinity", "--range", "paper"]),
        ("normalform.json", vec!["dualknot", "--minus-en", "5"]),
        ("gmap.json", vec!["dualknot", "--minus-en", "5", "--check", "gmap"]),
    ];
    for (name, mut args) in cases {
        let path = dir.path().join(name);
        let path_str = path.to_str().unwrap().to_string();
        args.extend(["--output", path_str.as_str()]);
        stdout(&args);
        let summary = stdout(&["validate", &path_str]);
        assert!(summary.starts_with("valid"), "{name}: {summary}");
    }
}

#[test]
fn round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    fs::write(&first, stdout(&["model", "--minus-en", "9"])).unwrap();
    let second = stdout(&["model", "--input", first.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&first).unwrap(), second);
}

#[test]
fn dual_normal_form_feeds_back_into_surgery() {
    let dir = tempfile::tempdir().unwrap();
    let nf = dir.path().join("nf.json");
    let report: serde_json::Value = serde_json::from_str(&stdout(&["dualknot", "--minus-en", "5"])).unwrap();
    assert_eq!((report["o"].as_u64(), report["h"].as_u64(), report["v"].as_u64()), (Some(1), Some(3), Some(3)));
    fs::write(&nf, report["complex"].to_string()).unwrap();
    let text = stdout(&["surgery", "--input", nf.to_str().unwrap(), "--p", "-2", "--q", "1", "--sector", "1"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["sectors"][0]["sector"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["surgery", "--minus-en", "3", "--p", "5", "--q", "2"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn invalid_complex_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // d² ≠ 0: a -> b -> c with unit powers.
    fs::write(
        &path,
        r#"{"generators":[{"name":"a","alexander":0,"maslov_x4":8},{"name":"b","alexander":0,"maslov_x4":4},{"name":"c","alexander":0,"maslov_x4":0}],"differential":[{"from":"a","to":"b","u_power":0},{"from":"b","to":"c","u_power":0}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&path, "{not json").unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
}
