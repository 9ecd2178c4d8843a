//! End-to-end tests of the `pseudofield` binary: output formats, exit
//! codes, report files, and byte-level determinism.

use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudofield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_the_closed_form_value() {
    let out = bin(&[
        "eval", "--instance", "moebius3", "--x", "3", "--tuple", "2,0.5,-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5");

    let out = bin(&[
        "eval", "--instance", "moebius3", "--mode", "rational", "--x", "3", "--tuple", "2,1/2,-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5");
}

#[test]
fn solve_prints_the_tuple_row_major() {
    let out = bin(&[
        "solve", "--instance", "semidirect", "--n", "2", "--from", "2,0,0,1", "--to", "2,3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1,1.5,4,5");
}

#[test]
fn usage_errors_exit_with_2() {
    let out = bin(&["eval", "--instance", "unknown", "--x", "1", "--tuple", "1,2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bin(&["check", "--instance", "affine2", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bin(&["eval", "--instance", "affine2", "--x", "abc", "--tuple", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_exit_status_reflects_the_report() {
    let out = bin(&[
        "check", "--instance", "affine2", "--samples", "150", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"pass\": true"));

    let out = bin(&[
        "check", "--instance", "adversarial2", "--samples", "150", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"pass\": false"));
}

#[test]
fn report_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("pf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = bin(&[
            "check", "--instance", "moebius3", "--samples", "300", "--seed", "9",
            "--report", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).is_empty());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b, "identical flags give byte-identical reports");
    let parsed: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    assert_eq!(parsed["instance"], "moebius3");
    assert_eq!(parsed["n"], 3);
    assert_eq!(parsed["seed"], 9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn roundtrip_command_reports() {
    let out = bin(&[
        "roundtrip", "--instance", "affine2", "--mode", "rational", "--samples", "200",
        "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["pass"], true);
    let ids: Vec<&str> = parsed["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"roundtrip_mul"));
    assert!(ids.contains(&"roundtrip_inv"));
    assert!(ids.contains(&"roundtrip_phi"));
}
