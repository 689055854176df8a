use std::io::{self, Write};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// One check outcome. Field order is the json-lines key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check: String,
    pub subject: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.records.iter().any(|r| r.verdict == Verdict::Fail)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == verdict).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    JsonLines,
}

pub fn emit_report(report: &Report, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::JsonLines => {
            for r in &report.records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Text => {
            if report.records.is_empty() {
                return Ok(());
            }
            let width = report.records.iter().map(|r| r.check.len()).max().unwrap_or(0);
            for r in &report.records {
                write!(out, "{:<14} {:<width$}  {}", r.verdict.as_str(), r.check, r.subject)?;
                if let Some(w) = &r.witness {
                    write!(out, "  ({w})")?;
                }
                if r.ms > 0 {
                    write!(out, "  {} ms", r.ms)?;
                }
                writeln!(out)?;
            }
            writeln!(
                out,
                "{} pass, {} fail, {} not applicable",
                report.count(Verdict::Pass),
                report.count(Verdict::Fail),
                report.count(Verdict::NotApplicable)
            )?;
        }
    }
    Ok(())
}
