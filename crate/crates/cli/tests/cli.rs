use std::process::{Command, Output};

use serde_json::Value;

fn qmckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmckay")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qmckay(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roots_a2_and_g2() {
    let a2 = json(&["roots", "A2"]);
    assert_eq!(a2["schema_version"], 1);
    assert_eq!(a2["positive_roots"].as_array().unwrap().len(), 3);
    assert_eq!(a2["highest_root"], serde_json::json!([1, 1]));
    assert_eq!(a2["epsilon"], "3");

    let g2 = json(&["roots", "--type", "G2"]);
    assert_eq!(g2["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(g2["cartan"], serde_json::json!([[2, -1], [-3, 2]]));
    assert_eq!(g2["epsilon"], "8");
    assert_eq!(g2["coxeter_number"], "6");
}

#[test]
fn roots_csv_and_text() {
    let out = qmckay(&["roots", "D4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("index,height,coefficients"));
    assert_eq!(text.lines().count(), 13);
    let out = qmckay(&["roots", "E6", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("positive roots (36)"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["roots", "Z9"][..],
        &["roots", "B1"],
        &["roots"],
        &["verify", "A2", "--trials", "0"],
        &["verify", "B3", "--checks", "mckay"],
        &["verify", "A3", "--checks", "nonsense"],
        &["crc", "A2", "--max-insertions", "2"],
        &["crc", "F4"],
    ] {
        let out = qmckay(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_qmckay"))
        .args(["roots", "A2"])
        .env("QMCKAY_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports() {
    let v = json(&["verify", "F4", "--trials", "20", "--seed", "7"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(names.contains(&"folding") && !names.contains(&"mckay"));

    let v = json(&["verify", "A5", "--checks", "gijk,mckay"]);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["violations"] == 0));
}

#[test]
fn crc_a1_record() {
    let v = json(&["crc", "A1", "--max-insertions", "4"]);
    assert_eq!(v["group_order"], 2);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["value_rational"], "0");
    assert_eq!(records[1]["classes"], serde_json::json!(["g", "g", "g", "g"]));
    assert_eq!(records[1]["value_rational"], "-1/2");
    assert!((records[1]["value_float"].as_f64().unwrap() + 0.5).abs() < 1e-12);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = qmckay(&["crc", "D4", "--max-insertions", "3"]);
    let b = Command::new(env!("CARGO_BIN_EXE_qmckay"))
        .args(["crc", "D4", "--max-insertions", "3"])
        .env("QMCKAY_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);

    let path = std::env::temp_dir().join(format!("qmckay-cli-{}.json", std::process::id()));
    let out = qmckay(&["verify", "A3", "--trials", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    qmckay(&["verify", "A3", "--trials", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["type"], "A3");
    std::fs::remove_file(path).unwrap();
}
