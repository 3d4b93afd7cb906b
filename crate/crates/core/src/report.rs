//! Structured check results shared by every suite.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub model: String,
    pub check: String,
    pub degree_bound: Option<u32>,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(model: &str, check: &str, degree_bound: Option<u32>) -> Self {
        CheckReport {
            model: model.to_owned(),
            check: check.to_owned(),
            degree_bound,
            status: Status::Pass,
            violations: Vec::new(),
            elapsed_ms: 0,
            note: None,
        }
    }

    pub fn skipped(model: &str, check: &str, note: impl Into<String>) -> Self {
        CheckReport {
            status: Status::Skipped,
            note: Some(note.into()),
            ..CheckReport::new(model, check, None)
        }
    }

    pub fn relation_violation(&mut self, relation: String, residual: String) {
        self.push(Violation {
            relation: Some(relation),
            word: None,
            residual,
        });
    }

    pub fn word_violation(&mut self, word: String, residual: String) {
        self.push(Violation {
            relation: None,
            word: Some(word),
            residual,
        });
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.status = Status::Fail;
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Stamp elapsed time measured from `start`.
    pub fn finish(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut s = format!("[{status}] {} / {}", self.model, self.check);
        if let Some(d) = self.degree_bound {
            let _ = write!(s, " (degree {d})");
        }
        let _ = write!(s, " {} ms", self.elapsed_ms);
        if let Some(n) = &self.note {
            let _ = write!(s, "\n    note: {n}");
        }
        for v in &self.violations {
            let what = v
                .relation
                .as_deref()
                .map(|r| format!("relation {r}"))
                .or_else(|| v.word.as_deref().map(|w| format!("word {w}")))
                .unwrap_or_default();
            let _ = write!(s, "\n    {what}: residual {}", v.residual);
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(crate::Error::Usage(format!("unknown format `{other}` (json or text)"))),
        }
    }
}

/// JSON array, or one text block per report followed by a summary line.
pub fn export_report(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialise"),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.to_text());
                s.push('\n');
            }
            let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
            let _ = writeln!(
                s,
                "{} passed, {} failed, {} skipped",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skipped)
            );
            s
        }
    }
}
