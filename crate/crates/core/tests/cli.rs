use std::process::Command;

use semifrac::cli::{verify_report, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semifrac"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn run_report(args: &[&str]) -> (i32, Report) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--report", &p]);
    let (code, _) = run(&all);
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.exit_code, code);
    (code, r)
}

#[test]
fn spec_commands() {
    let (code, out) = run(&["classify", "--instance", "polync:1", "({0} * {1+x1})^-1"]);
    assert_eq!(code, 1);
    assert!(out.contains("Illegal"));
    let (code, out) = run(&[
        "eval",
        "--instance",
        "polync:1",
        "--point",
        "3",
        "({1+x1} + {1})^-1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("1/5"));
    let (code, out) = run(&[
        "search-b",
        "--instance",
        "polync:1",
        "--x",
        "{2+x1 x1}",
        "--y",
        "{1+2x1}",
        "--eps",
        "1/2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("m = 3"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["parse", "{1"]).0, 3);
    assert_eq!(run(&["eq", "--instance", "polync:7x", "{1}", "{1}"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&["eq", "{1}", "({1})^-1"]).0, 0);
    assert_eq!(run(&["eq", "{1+x1}", "{2+x1}"]).0, 1);
    assert_eq!(run(&["leq", "{2+x1 x1}", "{1+2x1}"]).0, 1);
    assert_eq!(
        run(&["search-b", "--x", "1", "--y", "2", "--eps", "1/4", "--m-max", "5"]).0,
        2
    );
    assert_eq!(run(&["oracle-compare", "{1}", "{1}"]).0, 0);
    assert_eq!(
        run(&["oracle-compare", "--instance", "polync:2", "{1}", "{1}"]).0,
        3
    );
    assert_eq!(
        run(&["check-d", "--x", "2", "--y", "2", "--r", "1", "--eps", "1", "--p", "3"]).0,
        1
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn reports_replay_and_are_deterministic() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["parse", "2 . {1+x1} * ({2})^-1"],
        vec!["classify", "({0})^-1"],
        vec!["eval", "--point", "1/2", "({1+x1})^-1"],
        vec!["eq", "{1+x1} * ({1+x1})^-1", "{1}"],
        vec!["eq", "({1+x1})^-1", "({2+x1})^-1"],
        vec![
            "eq",
            "--instance",
            "polycomm:1",
            "{1+x1} * ({2+x1})^-1",
            "({2+x1})^-1 * {1+x1}",
        ],
        vec!["leq", "({2+2x1})^-1", "({1+x1})^-1"],
        vec!["leq", "{2+x1 x1}", "{1+2x1}"],
        vec!["pu-witness", "({1+x1})^-1 + {3}"],
        vec!["check-a", "--x", "{2+x1 x1}", "--y", "{1+2x1}"],
        vec!["check-a", "--x", "1", "--y", "2"],
        vec!["search-b", "--x", "2+x1 x1", "--y", "1+2x1", "--eps", "1/2"],
        vec![
            "search-c", "--x", "2+x1 x1", "--y", "1+2x1", "--r", "2", "--eps", "1",
        ],
        vec![
            "check-d", "--x", "2+x1 x1", "--y", "1+2x1", "--r", "2", "--eps", "1/2",
        ],
        vec![
            "check-d",
            "--x",
            "2+x1 x1",
            "--y",
            "1+2x1",
            "--r",
            "2",
            "--eps",
            "1/4",
            "--p",
            "1 + 1/8X^3",
        ],
        vec![
            "oracle-compare",
            "--instance",
            "polycomm:1",
            "{2} * ({4})^-1",
            "1/2 . {1}",
        ],
    ];
    for args in cases {
        let (_, r1) = run_report(&args);
        let (_, mut r2) = run_report(&args);
        assert_eq!(r1.schema, 1);
        assert!(verify_report(&r1).unwrap(), "{args:?}");
        r2.wall_time_ms = r1.wall_time_ms;
        assert_eq!(r1, r2, "{args:?}");
        // replay through the binary
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        std::fs::write(&p, serde_json::to_string(&r1).unwrap()).unwrap();
        assert_eq!(run(&["replay", p.to_str().unwrap()]).0, 0, "{args:?}");
    }
}

#[test]
fn tampered_report_rejected() {
    let (_, mut r) = run_report(&["search-b", "--x", "2+x1 x1", "--y", "1+2x1", "--eps", "1/2"]);
    r.evidence["m"] = serde_json::json!(2);
    assert!(!verify_report(&r).unwrap());
}

#[test]
fn missing_b_is_inconclusive_when_a_passes() {
    let (code, r) = run_report(&[
        "search-b", "--x", "2+x1 x1", "--y", "1+2x1", "--eps", "1/2", "--m-max", "2",
    ]);
    assert_eq!((code, r.verdict.as_str()), (2, "inconclusive"));
    assert!(verify_report(&r).unwrap());
    let (code, r) = run_report(&[
        "search-b", "--x", "1", "--y", "2", "--eps", "1/4", "--m-max", "5",
    ]);
    assert_eq!((code, r.verdict.as_str()), (2, "not-found"));
}
