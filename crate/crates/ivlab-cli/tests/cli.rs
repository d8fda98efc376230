//! End-to-end runs of the compiled binary: output shape, JSON schema,
//! exit codes, and determinism across thread counts.

use std::process::{Command, Output};

fn ivlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ivlab"))
        .args(args)
        .env_remove("IV_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(out)).expect("one JSON object on stdout")
}

#[test]
fn exact_prints_the_sequence() {
    let out = ivlab(&["exact", "box:1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("body      box:1,2,3"), "{text}");
    assert!(text.contains("[1, 6, 11, 6]"), "{text}");
}

#[test]
fn parse_errors_exit_2_with_a_byte_offset() {
    let out = ivlab(&["exact", "sphere:3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at byte 0"), "{err}");

    let out = ivlab(&["exact", "box:1,,2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at byte 6"), "{err}");

    let out = ivlab(&["bogus-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ivlab(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stats_reports_the_cube_moments() {
    let out = ivlab(&["stats", "cube:4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("wills     16"), "{text}");
    assert!(text.contains("delta     2"), "{text}");
    assert!(text.contains("variance  1"), "{text}");

    let v = json_of(&ivlab(&["stats", "cube:4", "--json"]));
    assert_eq!(v["body"], "cube:4");
    assert_eq!(v["wills"], 16.0);
    assert_eq!(v["delta"], 2.0);
    assert_eq!(v["variance"], 1.0);
    assert_eq!(v["sequence"].as_array().unwrap().len(), 5);
    assert!(v["entropy"].as_f64().unwrap() > 0.0);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["id", "pass", "lhs", "rhs"] {
            assert!(c.get(key).is_some(), "check missing {key}: {c}");
        }
    }
}

#[test]
fn mc_estimates_carry_the_sampling_metadata() {
    let out = ivlab(&["mc-wills", "box:1,1", "--samples", "20000", "--seed", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let est = &v["estimates"].as_array().unwrap()[0];
    assert_eq!(est["id"], "wills");
    assert_eq!(est["samples"], 20000);
    assert_eq!(est["seed"], 7);
    assert!(est["se"].as_f64().unwrap() > 0.0);
    let value = est["value"].as_f64().unwrap();
    assert!((value - 4.0).abs() < 0.5, "wills of the unit square near 4, got {value}");
}

#[test]
fn capability_and_usage_exits_are_distinct() {
    let out = ivlab(&["mc-kubota", "product(box:1,2;ball:2,1)", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(3));

    let out = ivlab(&["mc-kubota", "cube:2", "--j", "5", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_the_output() {
    let args = ["mc-wills", "cube:3", "--samples", "40000", "--seed", "3"];
    let one = ivlab(&[&args[..], &["--threads", "1"]].concat());
    let four = ivlab(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_ivlab"))
        .args(args)
        .env("IV_LAB_THREADS", "2")
        .output()
        .expect("binary runs");
    assert_eq!(one.stdout, via_env.stdout);
}

#[test]
fn corpus_names_round_trip_through_the_parser() {
    for (name, _) in ivlab::corpus::corpus() {
        let out = ivlab(&["exact", &name, "--json"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let v = json_of(&out);
        assert_eq!(v["body"], name.as_str(), "{name} should render back to itself");
    }
}

#[test]
fn corpus_verify_reports_the_ball_entropy_failures() {
    let out = ivlab(&["corpus-verify", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 24, "{text}");
    assert!(fails.iter().all(|l| l.contains("entropy")), "{text}");

    let again = ivlab(&["corpus-verify", "--seed", "0"]);
    assert_eq!(out.stdout, again.stdout, "verification is deterministic");
}

#[test]
fn tails_writes_the_requested_csv() {
    let path = std::env::temp_dir().join("ivlab_tails_test.csv");
    let path_str = path.to_str().unwrap();
    let out = ivlab(&["tails", "cube:3", "--grid", "0.5,1", "--csv", path_str]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3, "{csv}");
    assert!(lines[0].starts_with("t,upper_mass,"), "{csv}");
    assert!(lines[1].starts_with("0.5,"), "{csv}");
    assert!(lines[2].starts_with("1,"), "{csv}");
}

#[test]
fn maxent_flags_the_ball_and_clears_the_cube() {
    let out = ivlab(&["maxent", "ball:3,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL  entropy_le_matched_binomial"));

    let out = ivlab(&["maxent", "cube:3"]);
    assert_eq!(out.status.code(), Some(0));
}
