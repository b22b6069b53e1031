//! Text and JSON renderings of suite reports.
//!
//! The text form is line-oriented: `CHECK <name>: PASS|FAIL|SKIP`, with
//! counts and witnesses indented beneath failing or skipping checks. The
//! JSON form serializes [`SuiteReport`] field for field.

use std::fmt::Write;

use clap::ValueEnum;

use weakhopf::{Check, CheckReport, SparseTensor, Witness};

use crate::suite::SuiteReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn terms(t: &SparseTensor) -> String {
    let terms = t.terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.iter().map(|(l, c)| format!("{l}:{c}")).collect::<Vec<_>>().join(", ")
}

fn witness(out: &mut String, w: &Witness, indent: &str) {
    let _ = writeln!(out, "{indent}witness ({}): {}", w.indices.iter().map(usize::to_string).collect::<Vec<_>>().join(", "), w.labels.join(" | "));
    let _ = writeln!(out, "{indent}  lhs: {}", terms(&w.lhs));
    let _ = writeln!(out, "{indent}  rhs: {}", terms(&w.rhs));
}

fn check(out: &mut String, c: &Check) {
    let _ = writeln!(out, "CHECK {}: {}", c.name, c.status.as_str());
    let sampled = if c.sampled { " (sampled)" } else { "" };
    if c.failures > 0 {
        let _ = writeln!(out, "  failures: {} of {} evaluated{sampled}", c.failures, c.verified + c.failures);
    }
    if c.skipped > 0 {
        let _ = writeln!(out, "  skipped: {} of {} tuples outside the truncation{sampled}", c.skipped, c.total);
    }
    if let Some(d) = &c.detail {
        let _ = writeln!(out, "  detail: {d}");
    }
    for w in &c.witnesses {
        witness(out, w, "  ");
    }
}

pub fn report_text(out: &mut String, r: &CheckReport) {
    for c in &r.checks {
        check(out, c);
    }
    for (k, v) in &r.facts {
        let _ = writeln!(out, "FACT {k}: {v}");
    }
    for d in &r.discrepancies {
        let _ = writeln!(out, "DISCREPANCY {}", d.name);
        let _ = writeln!(out, "  stated: {}", d.stated);
        let _ = writeln!(out, "  computed: {}", d.computed);
        if let Some(w) = &d.witness {
            witness(out, w, "  ");
        }
    }
}

fn text(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "SUITE {} on {} ({} {})", report.suite.name(), report.input, report.tool, report.version);
    for s in &report.structures {
        let _ = writeln!(out);
        let _ = writeln!(out, "STRUCTURE {} ({}): {}", s.structure, s.kind, s.report.subject);
        report_text(&mut out, &s.report);
        if let Some(ms) = s.timing_ms {
            let _ = writeln!(out, "TIMING {ms:.1} ms");
        }
        let _ = writeln!(out, "RESULT {}: {}", s.structure, s.status.as_str());
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "SUMMARY: {}", report.status.as_str());
    out
}
