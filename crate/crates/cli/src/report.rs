use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A value stated in the published literature.
    Published,
    /// Recomputed here by an independent method.
    Oracle,
    /// Immediate from the definitions.
    Definition,
    /// No expectation: the row records a measurement.
    Measured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not computed because a size limit was hit.
    Skipped,
    /// Reported without a truth claim.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim_id: String,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub status: Status,
    pub pass: bool,
    pub ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(claim_id: impl Into<String>, computed: Value, expected: Value, provenance: Provenance, status: Status) -> Self {
        Check {
            claim_id: claim_id.into(),
            computed,
            expected,
            provenance,
            pass: status != Status::Fail,
            status,
            ms: None,
            note: None,
        }
    }

    /// Passes iff the two values are equal.
    pub fn equal(claim_id: impl Into<String>, computed: impl Into<Value>, expected: impl Into<Value>, provenance: Provenance) -> Self {
        let (computed, expected) = (computed.into(), expected.into());
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Self::new(claim_id, computed, expected, provenance, status)
    }

    /// Passes iff `holds`; `expected` describes the relation for readers.
    pub fn holds(
        claim_id: impl Into<String>,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
        provenance: Provenance,
        holds: bool,
    ) -> Self {
        let status = if holds { Status::Pass } else { Status::Fail };
        Self::new(claim_id, computed.into(), expected.into(), provenance, status)
    }

    pub fn info(claim_id: impl Into<String>, computed: impl Into<Value>) -> Self {
        Self::new(claim_id, computed.into(), Value::Null, Provenance::Measured, Status::Info)
    }

    pub fn skipped(claim_id: impl Into<String>, expected: impl Into<Value>, provenance: Provenance, why: String) -> Self {
        Self::new(claim_id, Value::Null, expected.into(), provenance, Status::Skipped).with_note(why)
    }

    /// A computation that returned an error counts as a failure.
    pub fn error(claim_id: impl Into<String>, expected: impl Into<Value>, provenance: Provenance, err: String) -> Self {
        Self::new(claim_id, Value::Null, expected.into(), provenance, Status::Fail).with_note(err)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Times `f` and stamps the elapsed milliseconds on every check it returns.
pub fn timed(timing: bool, f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let start = Instant::now();
    let mut checks = f();
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        for c in &mut checks {
            c.ms = Some(ms);
        }
    }
    checks
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { command: command.into(), pass, checks }
    }

    pub fn any_failed(&self) -> bool {
        !self.pass
    }

    /// Every row was skipped for size.
    pub fn all_skipped(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Skipped)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let cell = |v: &Value| match v {
            Value::Null => "-".to_string(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let rows: Vec<[String; 6]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.claim_id.clone(),
                    cell(&c.computed),
                    cell(&c.expected),
                    serde_json::to_value(c.provenance).map(|v| cell(&v)).unwrap_or_default(),
                    serde_json::to_value(c.status).map(|v| cell(&v)).unwrap_or_default(),
                    c.ms.map_or("-".into(), |ms| ms.to_string()),
                ]
            })
            .collect();
        let header = ["claim", "computed", "expected", "provenance", "status", "ms"];
        let mut width = header.map(str::len);
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[&str]| {
            let padded: Vec<String> = cells.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&mut out, &header);
        for row in &rows {
            line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
        }
        for c in self.checks.iter().filter(|c| c.note.is_some()) {
            let _ = writeln!(out, "note {}: {}", c.claim_id, c.note.as_deref().unwrap_or_default());
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(
            out,
            "{}: {} of {} checks failed",
            if self.pass { "PASS" } else { "FAIL" },
            failed,
            self.checks.len()
        );
        out
    }
}

/// The published JSON schema for [`Report`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");
