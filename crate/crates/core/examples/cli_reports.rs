// Driving the command-line front end in-process and replaying its JSON
// reports.

use semifrac::cli::{main_with, verify_report, Report};

pub fn run_example() -> semifrac::Result<()> {
    let dir = std::env::temp_dir().join(format!("semifrac-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("b.json");
    let p = path.to_str().unwrap();

    let code = main_with([
        "semifrac",
        "search-b",
        "--instance",
        "polync:1",
        "--x",
        "{2+x1 x1}",
        "--y",
        "{1+2x1}",
        "--eps",
        "1/2",
        "--report",
        p,
    ]);
    assert_eq!(code, 0);
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    println!(
        "{} -> {} {}",
        report.command, report.verdict, report.evidence
    );
    assert!(verify_report(&report)?);

    // exit codes: 1 for a definite no, 3 for bad input
    assert_eq!(main_with(["semifrac", "classify", "({0} * {1+x1})^-1"]), 1);
    assert_eq!(main_with(["semifrac", "eq", "{1", "{1}"]), 3);
    assert_eq!(main_with(["semifrac", "replay", p]), 0);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
