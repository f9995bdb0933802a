use std::process::{Command, Output};

use serde_json::Value;

fn skolem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skolem"))
        .args(args)
        .env_remove("SKOLEM_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .trim()
        .to_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("JSON on stdout")
}

#[test]
fn perfect_prints_a_valid_sequence() {
    let out = skolem(&["perfect", "2", "3", "5", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let seq = stdout(&out);
    let check = skolem(&[
        "validate",
        "--witness",
        &seq,
        "--diffs",
        "2,3,5,6",
        "--positions",
        "1-8",
    ]);
    assert_eq!(stdout(&check), "valid");
}

#[test]
fn count_reports_decimal_strings() {
    let out = skolem(&["count", "--family", "skolem", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], "504");
    assert_eq!(v["family"], "skolem");
    assert_eq!(v["order"], 8);
}

#[test]
fn negative_answer_exits_zero() {
    let out = skolem(&["decide", "--positions", "1,2,4,5", "--diffs", "1,3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "none");
}

#[test]
fn witnesses_round_trip_through_validate() {
    let out = skolem(&[
        "decide",
        "--positions",
        "1-10",
        "--diffs",
        "1,1,3,3,5",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["found"], true);
    let pairing = v["pairing"].to_string();
    let seq = v["pairing"]["sequence"].as_str().unwrap();
    for witness in [pairing.as_str(), seq] {
        let check = skolem(&[
            "validate",
            "--witness",
            witness,
            "--positions",
            "1-10",
            "--diffs",
            "1,1,3,3,5",
        ]);
        assert_eq!(stdout(&check), "valid", "{witness}");
    }
}

#[test]
fn jobs_do_not_change_counts() {
    for family in ["skolem", "perfect", "perfect-extremal", "perfect-sets"] {
        let a = json(&skolem(&["count", "--family", family, "--order", "7"]));
        let b = json(&skolem(&[
            "count", "--family", family, "--order", "7", "--jobs", "4",
        ]));
        assert_eq!(a["count"], b["count"], "{family}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(skolem(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        skolem(&["count", "--family", "nope", "--order", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(skolem(&["perfect", "0"]).status.code(), Some(1));
    assert_eq!(skolem(&["--help"]).status.code(), Some(0));
    assert_eq!(
        skolem(&["count", "--family", "perfect", "--order", "40"])
            .status
            .code(),
        Some(2)
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_skolem"))
        .args(["count", "--family", "skolem", "--order", "5"])
        .env("SKOLEM_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn tables_are_aligned_text() {
    let out = skolem(&["tables", "--family", "skolem", "--max", "5"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == rows[0].len()));
    assert!(rows[5].ends_with("10"));
}

#[test]
fn verify_two_missing_lists_exceptions() {
    let v = json(&skolem(&[
        "verify",
        "--conjecture",
        "two-missing",
        "--max",
        "8",
    ]));
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    let ex: Vec<Value> = v["parity_ok_unsolvable"].as_array().unwrap().clone();
    assert_eq!(ex.len(), 4);
}

#[test]
fn constructions_print_set_and_sequence() {
    let out = skolem(&["construct", "--method", "near-langford", "--defect", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{6,5,3,2}\n6 3 5 2 3 2 6 5");
    let out = skolem(&[
        "construct",
        "--method",
        "from-skolem",
        "--diffs",
        "1",
        "--witness",
        "11",
    ]);
    assert_eq!(stdout(&out), "{3,1}\n3 1 1 3");
    let out = skolem(&[
        "construct",
        "--method",
        "compose-c",
        "--left",
        "1",
        "--right",
        "3,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&skolem(&[
        "construct",
        "--method",
        "compose-e",
        "--left",
        "1",
        "--right",
        "1",
        "--format",
        "json",
    ]));
    assert_eq!(v["diffs"], serde_json::json!([2, 2]));
}

#[test]
fn displacement_accepts_negative_patterns() {
    let out = skolem(&["displacement", "--pattern", "(4,1,0,-2,-3)"]);
    assert_eq!(stdout(&out), "5 3 1 4 2");
    let out = skolem(&["displacement", "--pattern", "-1,1", "--count"]);
    assert_eq!(stdout(&out), "1");
    let out = skolem(&["displacement", "--pattern", "(2,2,2,-2,-2,-2)"]);
    assert_eq!(
        (out.status.code(), stdout(&out)),
        (Some(0), "none".to_owned())
    );
}
