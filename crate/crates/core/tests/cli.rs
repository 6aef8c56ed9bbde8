//! End-to-end tests of the command-line contract: output shapes, exit
//! codes, and the plain-format round-trip.

use std::process::{Command, Output};
use std::str::FromStr;

use brocot::{Fraction, ReductionScheme, TreeSpec};

fn brocot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brocot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 output")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn generate_prints_unit_tree_rows() {
    let out = brocot(&["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "0/1 1/1\n\
         0/1 1/3 2/3 1/1\n\
         0/1 1/5 2/7 1/3 4/9 5/9 2/3 5/7 4/5 1/1\n"
    );
}

#[test]
fn generate_prints_deferred_reduction_rows() {
    let out = brocot(&[
        "generate", "--lo", "0/2", "--hi", "1/1", "--scheme", "from-row:2", "--depth", "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "0/2 1/1\n\
         0/2 1/5 2/4 1/1\n\
         0/2 1/9 1/6 1/5 2/7 5/13 2/4 5/9 2/3 1/1\n"
    );
}

#[test]
fn generate_prints_classical_rows_at_weight_two() {
    let out = brocot(&["generate", "--lo", "0/1", "--hi", "1/0", "--k", "2", "--depth", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "0/1 1/0\n0/1 1/1 1/0\n0/1 1/2 1/1 2/1 1/0\n");
}

#[test]
fn generate_latex_matches_display_style() {
    let out = brocot(&["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "1", "--format", "latex"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "\\[ \\frac{0}{1} \\; \\; \\; \\frac{1}{1} \\]\n\\[ \\frac{0}{1} \\; \\; \\; \\frac{1}{3} \\; \\; \\; \\frac{2}{3} \\; \\; \\; \\frac{1}{1} \\]\n"
    );
}

#[test]
fn generate_json_rows_parse_and_match() {
    let out = brocot(&["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "2", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|line| serde_json::from_str(line).expect("valid JSON per line"))
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["depth"], 2);
    let entries = rows[2]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 10);
    assert_eq!(entries[1], serde_json::json!({"num": "1", "den": "5"}));
    assert_eq!(entries[8], serde_json::json!({"num": "4", "den": "5"}));
}

#[test]
fn plain_output_round_trips_to_the_same_rows() {
    let out = brocot(&[
        "generate", "--lo", "1/3", "--hi", "3/1", "--scheme", "coin:9", "--depth", "4",
    ]);
    assert_eq!(exit_code(&out), 0);
    let spec = TreeSpec::new(
        Fraction::new(1, 3).unwrap(),
        Fraction::new(3, 1).unwrap(),
        3,
        ReductionScheme::coin(9),
    )
    .unwrap();
    let expected: Vec<Vec<Fraction>> = spec
        .rows(4)
        .map(|row| row.unwrap().into_entries())
        .collect();
    let reparsed: Vec<Vec<Fraction>> = stdout(&out)
        .lines()
        .map(|line| {
            line.split(' ')
                .map(|token| Fraction::from_str(token).expect("valid fraction token"))
                .collect()
        })
        .collect();
    assert_eq!(reparsed, expected);
}

#[test]
fn member_exit_codes_follow_the_verdict() {
    let out = brocot(&["member", "--lo", "1/3", "--hi", "3/1", "1/1"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("never appears"));

    let out = brocot(&["member", "--lo", "0/1", "--hi", "1/1", "3/7"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("appears"));
}

#[test]
fn member_normalizes_unreduced_input() {
    let out = brocot(&["member", "--lo", "0/1", "--hi", "1/1", "2/4"]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("normalized to 1/2"), "{text}");
}

#[test]
fn member_json_carries_the_full_verdict() {
    let out = brocot(&["member", "--lo", "0/1", "--hi", "1/1", "--format", "json", "3/7"]);
    assert_eq!(exit_code(&out), 0);
    let verdict: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(verdict["is_member"], true);
    assert_eq!(verdict["target"], serde_json::json!({"num": "3", "den": "7"}));
    assert_eq!(verdict["nu_endpoints"], 0);
}

#[test]
fn locate_reports_position_and_certificate() {
    let out = brocot(&["locate", "--lo", "0/1", "--hi", "1/1", "3/7"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("entry 11 of row 3"), "{text}");

    let out = brocot(&["locate", "--lo", "0/1", "--hi", "1/1", "1/2"]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("ordinary mediant of 0/1 and 1/1"), "{text}");

    let out = brocot(&["locate", "--lo", "0/1", "--hi", "1/1", "--max-depth", "2", "1/99"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("no verdict within 2 rows"));
}

#[test]
fn locate_json_is_tagged_by_outcome() {
    let out = brocot(&["locate", "--lo", "0/1", "--hi", "1/1", "--format", "json", "1/3"]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["result"], "found");
    assert_eq!(value["depth"], 1);
    assert_eq!(value["index"], "1");
    assert_eq!(value["path"], serde_json::json!([0]));

    let out = brocot(&["locate", "--lo", "0/1", "--hi", "1/1", "--format", "json", "1/2"]);
    assert_eq!(exit_code(&out), 1);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["result"], "excluded");
    assert_eq!(value["left"], serde_json::json!({"num": "0", "den": "1"}));
}

#[test]
fn describe_prints_the_divisibility_conditions() {
    let out = brocot(&["describe", "--lo", "1/3", "--hi", "3/1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("cross-determinant: 8"), "{text}");
    assert!(text.contains("8 | 3x - y and 8 | 3y - x"), "{text}");
}

#[test]
fn verify_single_tree_reports_scheme_dependent_classes() {
    let out = brocot(&[
        "verify", "--suite", "parity", "--lo", "0/2", "--hi", "1/1",
        "--scheme", "from-row:2", "--depth", "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("pass"), "{text}");
    assert!(text.contains("2/3 with class (even, odd)"), "{text}");
}

#[test]
fn verify_suite_passes_and_emits_json_reports() {
    let out = brocot(&["verify", "--depth", "3", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 6);
    for report in &reports {
        assert_eq!(report["failures"].as_array().unwrap().len(), 0, "{report}");
    }
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "13"],
        &["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "21", "--stream"],
        &["generate", "--lo", "1/1", "--hi", "0/1", "--depth", "1"],
        &["generate", "--lo", "0x1", "--hi", "1/1", "--depth", "1"],
        &["generate", "--lo", "0/1", "--hi", "1/-2", "--depth", "1"],
        &["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "1", "--scheme", "dice"],
        &["member", "--lo", "0/2", "--hi", "1/1", "1/3"],
        &["member", "--lo", "0/1", "--hi", "1/1", "7/2"],
        &["locate", "--lo", "0/1", "--hi", "1/0", "--k", "2", "1/2"],
        &["verify", "--lo", "0/1"],
        &["verify", "--suite", "unavoidable", "--lo", "0/1", "--hi", "1/1"],
    ];
    for args in cases {
        let out = brocot(args);
        assert_eq!(exit_code(&out), 2, "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn stream_flag_admits_deep_generation() {
    // Depth 13 itself is too slow for a test, but the flag must be accepted
    // on the boundary row and produce the right row sizes.
    let out = brocot(&["generate", "--lo", "0/1", "--hi", "1/1", "--depth", "8", "--stream"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert_eq!(last.split(' ').count(), 3usize.pow(8) + 1);
}
