use jser::{execute, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = execute(
        std::iter::once("jser").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_PASS, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn bell_ghz_json_reports_contradiction() {
    let v = json(&["verify", "--scenario", "bell-ghz", "--format", "json"]);
    assert_eq!(v["contradiction_verdict"], true);
    assert_eq!(v["verdicts"]["contradiction"], true);
    assert_eq!(v["verdicts"]["incompleteness"], Value::Null);
    assert_eq!(v["parameters"], Value::Null);
    assert_eq!(v["sampling"], Value::Null);
    assert_eq!(v["ser_claims"].as_array().unwrap().len(), 12);
}

#[test]
fn every_check_has_the_schema_fields() {
    let v = json(&["verify", "--format", "json"]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        for key in [
            "scenario",
            "parameters",
            "seed",
            "checks",
            "sampling",
            "verdicts",
        ] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        for c in r["checks"].as_array().unwrap() {
            for key in [
                "description",
                "paper_anchor",
                "expected",
                "computed",
                "pass",
            ] {
                assert!(c.get(key).is_some(), "check missing {key}");
            }
        }
    }
}

#[test]
fn epr_psi_text_lists_post_selection() {
    let (code, out, _) = run(&["verify", "--scenario", "epr-psi"]);
    assert_eq!(code, EXIT_PASS);
    assert!(
        out.contains("post-selection probability P(sz(1) = +1, sz(2) = +1, sz(3) = +1) = 0.25"),
        "{out}"
    );
    assert!(out.contains("incompleteness = true"));
}

#[test]
fn invalid_parameters_exit_2() {
    let (code, out, err) = run(&["verify", "--scenario", "all", "--a-re", "0.9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("3|a|^2+|b|^2 must equal 1"), "{err}");
}

#[test]
fn ghz_scenarios_ignore_parameters() {
    let (code, _, _) = run(&["verify", "--scenario", "epr-ghz", "--a-re", "0.9"]);
    assert_eq!(code, EXIT_PASS);
}

#[test]
fn complex_parameters_are_accepted() {
    // 3(0.09 + 0.16) + 0.25 = 1
    let v = json(&[
        "verify",
        "--scenario",
        "epr-psi",
        "--a-re",
        "0.3",
        "--a-im",
        "-0.4",
        "--b-im",
        "0.5",
        "--b-re",
        "0",
        "--format",
        "json",
    ]);
    let p = v["post_selection"]["probability"].as_f64().unwrap();
    assert!((p - 0.25).abs() < 1e-12);
    assert_eq!(v["parameters"]["a"]["im"].as_f64(), Some(-0.4));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "--scenario", "nope"]).0, EXIT_USAGE);
    assert_eq!(run(&["sample", "--trials", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "--tolerance", "-1"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["verify", "--scenario", "epr-psi", "--flip-ser", "3"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&[]).0, EXIT_USAGE);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("verify") && out.contains("sample"));
}

#[test]
fn flipped_claim_names_the_failing_check() {
    let (code, _, err) = run(&["verify", "--scenario", "epr-psi", "--flip-ser", "0"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.contains("sx(2) = +1 | sz(1) = +1"), "{err}");
}

#[test]
fn impossible_tolerance_fails_checks() {
    let (code, _, err) = run(&["verify", "--scenario", "epr-psi", "--tolerance", "1e-30"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.starts_with("FAIL [epr-psi]"));
}

#[test]
fn bell_ghz_sampling_has_no_product_violations() {
    let v = json(&[
        "sample",
        "--scenario",
        "bell-ghz",
        "--trials",
        "20000",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let experiments = v["sampling"]["experiments"].as_array().unwrap();
    assert_eq!(experiments[0]["parity"].as_f64(), Some(-1.0));
    for e in experiments {
        assert_eq!(e["hard_violations"], 0);
    }
}

#[test]
fn numbers_carry_17_significant_digits() {
    let (_, out, _) = run(&["verify", "--scenario", "epr-psi", "--format", "json"]);
    assert!(
        out.contains("\"probability\": 2.5000000000000000e-1"),
        "{out}"
    );
}

#[test]
fn seeds_change_sampling() {
    let a = run(&[
        "sample",
        "--scenario",
        "epr-psi",
        "--trials",
        "5000",
        "--seed",
        "1",
        "--format",
        "json",
    ])
    .1;
    let b = run(&[
        "sample",
        "--scenario",
        "epr-psi",
        "--trials",
        "5000",
        "--seed",
        "2",
        "--format",
        "json",
    ])
    .1;
    assert_ne!(a, b);
}
