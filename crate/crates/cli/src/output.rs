use clap::ValueEnum;
use formstrength::json::Verdict;
use formstrength::suites::SuiteReport;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Outcome {
    pub stdout: String,
    pub stderr: Option<String>,
    pub verdict: Verdict,
}

impl Outcome {
    pub fn json(v: &Value) -> Self {
        Outcome {
            stdout: serde_json::to_string_pretty(v).expect("serializable") + "\n",
            stderr: None,
            verdict: Verdict::Pass,
        }
    }

    pub fn text(s: String) -> Self {
        Outcome {
            stdout: s,
            stderr: None,
            verdict: Verdict::Pass,
        }
    }

    pub fn emit(&self) {
        print!("{}", self.stdout);
        if let Some(e) = &self.stderr {
            eprint!("{e}");
        }
    }
}

pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn report(report: &SuiteReport, verdict: Verdict, format: Format) -> anyhow::Result<Outcome> {
    let stdout = match format {
        Format::Json => {
            let v = json!({
                "suite": report.suite,
                "criterion": report.criterion,
                "verdict": verdict,
                "checks": report.checks,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.check.clone(),
                        c.instance.clone(),
                        serde_json::to_value(c.verdict)
                            .ok()
                            .and_then(|v| v.as_str().map(str::to_string))
                            .unwrap_or_default(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            csv_string(&["check", "instance", "verdict", "detail"], &rows)?
        }
    };
    Ok(Outcome {
        stdout,
        stderr: None,
        verdict,
    })
}
