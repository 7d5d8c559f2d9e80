use std::str::FromStr;

use super::VerificationReport;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::parse("report format", s, "expected json or csv")),
        }
    }
}

const CSV_HEADER: [&str; 13] = [
    "ruleset",
    "check",
    "coverage",
    "bound",
    "mode",
    "positions_checked",
    "mismatch_count",
    "status",
    "note",
    "wall_time_s",
    "position",
    "claim",
    "oracle",
];

/// JSON: an array of report objects. CSV: one row per reported mismatch, or
/// a single row with empty mismatch columns for a report without any.
pub fn export_report(reports: &[VerificationReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in reports {
                let head = [
                    r.ruleset.to_string(),
                    r.check.clone(),
                    r.coverage.map(|c| c.to_string()).unwrap_or_default(),
                    r.bound.to_string(),
                    serde_json::to_value(r.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                    r.positions_checked.to_string(),
                    r.mismatch_count.to_string(),
                    r.status.to_string(),
                    r.note.clone().unwrap_or_default(),
                    format!("{:.3}", r.wall_time_s),
                ];
                if r.mismatches.is_empty() {
                    w.write_record(head.iter().map(String::as_str).chain(["", "", ""]))
                        .expect("in-memory write");
                }
                for m in &r.mismatches {
                    let tail = [m.position.to_string(), m.claim.to_string(), m.oracle.to_string()];
                    w.write_record(head.iter().chain(tail.iter())).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
    }
}
