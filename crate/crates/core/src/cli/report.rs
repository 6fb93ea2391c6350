//! Machine-readable records (JSON lines) and the human table.

use serde::{Deserialize, Serialize};

use crate::hochschild::ComplexReport;
use crate::theorems::{VerificationRecord, Verdict, RECORD_SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub schema: String,
    pub instance: String,
    pub algebra: String,
    pub coeff: String,
    pub report: ComplexReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Ext or Tor dimensions, with the independent oracle where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedRecord {
    pub schema: String,
    pub instance: String,
    pub op: String,
    pub algebra: String,
    pub arguments: Vec<String>,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<usize>>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub schema: String,
    pub instance: String,
    pub algebra: String,
    pub dim: usize,
    /// `dim H^0(D, D*)`, computed separately.
    pub h0_dual_dim: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Record {
    Verification(VerificationRecord),
    Complex(ComplexRecord),
    Derived(DerivedRecord),
    Trace(TraceRecord),
}

pub fn schema() -> String {
    RECORD_SCHEMA.to_string()
}

impl Record {
    pub fn is_match(&self) -> bool {
        match self {
            Record::Verification(r) => r.is_match(),
            Record::Complex(r) => r.report.certified,
            Record::Derived(r) => r.verdict == Verdict::Match,
            Record::Trace(r) => r.verdict == Verdict::Match,
        }
    }

    pub fn set_elapsed(&mut self, ms: u64) {
        let slot = match self {
            Record::Verification(r) => &mut r.elapsed_ms,
            Record::Complex(r) => &mut r.elapsed_ms,
            Record::Derived(r) => &mut r.elapsed_ms,
            Record::Trace(r) => &mut r.elapsed_ms,
        };
        *slot = Some(ms);
    }

    fn elapsed(&self) -> Option<u64> {
        match self {
            Record::Verification(r) => r.elapsed_ms,
            Record::Complex(r) => r.elapsed_ms,
            Record::Derived(r) => r.elapsed_ms,
            Record::Trace(r) => r.elapsed_ms,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// Columns: kind, subject, degrees, lhs, rhs, verdict.
    fn row(&self) -> [String; 6] {
        let verdict = |ok: bool| if ok { "match" } else { "MISMATCH" }.to_string();
        match self {
            Record::Verification(r) => [
                r.suite.clone(),
                r.instance.clone(),
                format!("{}..{}", r.degree_min, r.degree_max),
                join(&r.lhs),
                join(&r.rhs),
                verdict(r.is_match()),
            ],
            Record::Complex(r) => {
                let kind = match r.report.side {
                    crate::hochschild::ComplexSide::Cochain => "cohomology",
                    crate::hochschild::ComplexSide::Chain => "homology",
                };
                [
                    kind.to_string(),
                    format!("{}:{}[{}]", r.instance, r.algebra, r.coeff),
                    format!("0..{}", r.report.max_degree),
                    join(&r.report.homology_dims()),
                    "-".to_string(),
                    if r.report.certified { "certified" } else { "UNCERTIFIED" }.to_string(),
                ]
            }
            Record::Derived(r) => [
                r.op.clone(),
                format!("{}:{}[{}]", r.instance, r.algebra, r.arguments.join(", ")),
                format!("0..{}", r.dims.len().saturating_sub(1)),
                join(&r.dims),
                r.oracle.as_deref().map_or_else(|| "-".to_string(), join),
                verdict(r.verdict == Verdict::Match),
            ],
            Record::Trace(r) => [
                "trace".to_string(),
                format!("{}:{}", r.instance, r.algebra),
                "-".to_string(),
                r.dim.to_string(),
                r.h0_dual_dim.to_string(),
                verdict(r.verdict == Verdict::Match),
            ],
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Left-aligned columns sized to their widest cell.
pub fn render_table(records: &[Record]) -> String {
    let mut header: Vec<String> = ["kind", "subject", "degrees", "lhs", "rhs", "verdict"].map(String::from).to_vec();
    let timed = records.iter().any(|r| r.elapsed().is_some());
    if timed {
        header.push("ms".into());
    }
    let mut rows = vec![header];
    for r in records {
        let mut row = r.row().to_vec();
        if timed {
            row.push(r.elapsed().map_or_else(|| "-".into(), |t| t.to_string()));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
