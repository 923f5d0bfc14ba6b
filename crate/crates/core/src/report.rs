//! Verification reports as canonical JSON or CSV.
//!
//! CSV columns, in order: `group_label, group_order, p, k, a, b, sum_ab,
//! passes, equality, extremal, irr_pprime, notes`. An absent `irr_pprime`
//! is an empty field.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::canonical::to_json;
use crate::error::GroupError;
use crate::numtheory::{bound_profile, BoundProfile};
use crate::verify::{CorpusReport, VerificationRecord};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CSV_COLUMNS: [&str; 12] = [
    "group_label",
    "group_order",
    "p",
    "k",
    "a",
    "b",
    "sum_ab",
    "passes",
    "equality",
    "extremal",
    "irr_pprime",
    "notes",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub groups_checked: usize,
    pub checks_run: usize,
    pub failures: usize,
    pub equalities: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    pub records: Vec<VerificationRecord>,
    /// One profile per distinct prime among the records, ascending.
    pub profiles: Vec<BoundProfile>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Report {
    pub fn new(records: Vec<VerificationRecord>, groups_checked: usize) -> Result<Self, GroupError> {
        let primes: BTreeSet<u64> = records.iter().map(|r| r.p).collect();
        let profiles = primes.into_iter().map(bound_profile).collect::<Result<_, _>>()?;
        let summary = Summary {
            groups_checked,
            checks_run: records.len(),
            failures: records.iter().filter(|r| r.is_failure()).count(),
            equalities: records.iter().filter(|r| r.equality).count(),
        };
        Ok(Report {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            records,
            profiles,
            summary,
        })
    }

    pub fn from_corpus(corpus: &CorpusReport) -> Result<Self, GroupError> {
        Report::new(corpus.records.clone(), corpus.groups_checked)
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => emit_csv(&report.records),
    }
}

fn emit_csv(records: &[VerificationRecord]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in records {
        w.write_record([
            r.group_label.clone(),
            r.group_order.to_string(),
            r.p.to_string(),
            r.k.to_string(),
            r.a.to_string(),
            r.b.to_string(),
            r.sum_ab.to_string(),
            r.passes.to_string(),
            r.equality.to_string(),
            r.extremal.to_string(),
            r.irr_pprime.map(|n| n.to_string()).unwrap_or_default(),
            r.notes.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cp_semidirect;
    use crate::verify::conjecture_a_check;

    #[test]
    fn empty_report() {
        let r = Report::new(Vec::new(), 0).unwrap();
        assert_eq!(r.summary, Summary::default());
        let json = emit_report(&r, Format::Json);
        assert!(json.contains("\"checks_run\": 0"));
        assert_eq!(emit_report(&r, Format::Csv), CSV_COLUMNS.join(",") + "\n");
    }

    #[test]
    fn dihedral_row() {
        let rec = conjecture_a_check(&cp_semidirect(7, 2).unwrap(), 7, "D7").unwrap();
        let r = Report::new(vec![rec], 1).unwrap();
        let csv = emit_report(&r, Format::Csv);
        assert_eq!(csv.lines().nth(1), Some("D7,14,7,5,2,3,5,true,true,K,,"));
        assert_eq!(r.summary.equalities, 1);
        assert_eq!(r.profiles.len(), 1);
        let json = emit_report(&r, Format::Json);
        assert_eq!(json, emit_report(&r.clone(), Format::Json));
        assert!(json.contains("\"lower_old\": 4.898979"));
        assert!(json.contains("\"upper_safe\": \"5\""));
    }
}
