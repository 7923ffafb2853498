//! The run report: deterministic, machine-readable, and renderable as
//! a text table. One report is produced per run; the JSON form contains
//! every number the text form shows.

use std::time::Duration;

use serde::{Deserialize, Serialize};

/// One comparison row. `provenance` records where the expected value
/// comes from (`stated`, `enumerated`, `immediate`, `cross-oracle`, or
/// `file`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub computed: String,
    pub expected: String,
    pub provenance: String,
    pub pass: bool,
}

impl ReportRow {
    pub fn new(
        label: impl Into<String>,
        computed: impl Into<String>,
        expected: impl Into<String>,
        provenance: &str,
    ) -> Self {
        let computed = computed.into();
        let expected = expected.into();
        let pass = computed == expected;
        ReportRow {
            label: label.into(),
            computed,
            expected,
            provenance: provenance.into(),
            pass,
        }
    }
}

/// A complete run report. Deterministic for identical inputs: the
/// wall-clock time lives outside the serialized content.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub engine_version: String,
    /// Preset name or spec-file name.
    pub source: String,
    pub kind: String,
    pub field: String,
    pub k: String,
    pub max_degree: u32,
    /// The headline computed series (betti numbers, dimensions or
    /// total-degree dims, depending on the kind).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<usize>>,
    pub rows: Vec<ReportRow>,
    /// Informational lines that are not comparisons.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Representative cocycles per degree, when requested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representatives: Vec<(String, Vec<String>)>,
    /// `PASS`, `FAIL`, or `COMPUTED` when there was nothing to compare.
    pub verdict: String,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict != "FAIL"
    }

    pub fn finish_verdict(&mut self) {
        self.verdict = if self.rows.is_empty() {
            "COMPUTED".into()
        } else if self.rows.iter().all(|r| r.pass) {
            "PASS".into()
        } else {
            "FAIL".into()
        };
    }

    /// The headline series label for the kind.
    fn series_label(&self) -> &'static str {
        match self.kind.as_str() {
            "cdga" => "betti",
            "koszul" => "totals",
            _ => "dims",
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("source: {}\n", self.source));
        out.push_str(&format!("kind: {}\n", self.kind));
        out.push_str(&format!("field: {}\n", self.field));
        out.push_str(&format!("k: {}\n", self.k));
        out.push_str(&format!("max degree: {}\n", self.max_degree));
        if let Some(series) = &self.series {
            let nums: Vec<String> = series.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("{}: {}\n", self.series_label(), nums.join(" ")));
        }
        for note in &self.notes {
            out.push_str(&format!("{note}\n"));
        }
        if !self.rows.is_empty() {
            out.push_str("rows:\n");
            for r in &self.rows {
                out.push_str(&format!(
                    "  {}: computed {}, expected {} [{}] {}\n",
                    r.label,
                    r.computed,
                    r.expected,
                    r.provenance,
                    if r.pass { "ok" } else { "MISMATCH" }
                ));
            }
        }
        if !self.representatives.is_empty() {
            out.push_str("representatives:\n");
            for (label, reps) in &self.representatives {
                out.push_str(&format!("  {label}:\n"));
                for rep in reps {
                    out.push_str(&format!("    {rep}\n"));
                }
            }
        }
        out.push_str(&format!("overall: {}\n", self.verdict));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
