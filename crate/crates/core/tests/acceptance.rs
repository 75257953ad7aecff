//! Runs the ten acceptance suites at full size and prints one line per
//! criterion. Criteria whose literal statement is known not to hold are
//! reported as such and only accepted if the failure has the documented shape.

use std::process::ExitCode;
use std::time::Instant;

use formstrength::json::Verdict;
use formstrength::suites::{run_suite, SuiteOptions, SuiteReport, SUITES};

/// The documented shape of an expected failure, if any.
fn known_deviation(report: &SuiteReport) -> Option<&'static str> {
    let failed: Vec<_> = report.checks.iter().filter(|c| c.verdict == Verdict::Fail).collect();
    match report.criterion {
        // the row-span hypothesis does not exclude spaces inside a small ideal
        4 if failed.iter().all(|c| c.check == "least-rank") => {
            Some("row-span hypothesis weaker than the theorem's; see ledger")
        }
        // only n2 = 0 with even eta, where the displayed closed form is off by 2 more
        7 if failed.iter().all(|c| {
            c.check == "etaB-discrepancy"
                && c.detail
                    .split(" except ")
                    .nth(1)
                    .is_some_and(|pts| pts.split(' ').all(|p| p.contains(",0):")))
        }) =>
        {
            Some("n2 = 0, even eta: discrepancy ceil(eta/2) + 2")
        }
        _ => None,
    }
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut ok = true;
    for info in SUITES {
        let start = Instant::now();
        let line = match run_suite(info.name, &opts) {
            Ok(report) => {
                let secs = start.elapsed().as_secs_f64();
                let summary: Vec<String> = report
                    .checks
                    .iter()
                    .map(|c| format!("{} [{}]: {}", c.check, c.instance, c.detail))
                    .collect();
                match report.verdict(false) {
                    Verdict::Pass | Verdict::Skipped => format!("PASS  ({secs:.1}s) {}", summary.join("; ")),
                    Verdict::Fail => match known_deviation(&report) {
                        Some(why) => format!("FAIL  known deviation: {why} ({secs:.1}s) {}", summary.join("; ")),
                        None => {
                            ok = false;
                            format!("FAIL  ({secs:.1}s) {}", summary.join("; "))
                        }
                    },
                }
            }
            Err(e) => {
                ok = false;
                format!("FAIL  error: {e}")
            }
        };
        println!("criterion {:>2} {:<15} {line}", info.criterion, info.name);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
