//! Run reports and their plain-text rendering.

use serde::Serialize;
use serde_json::Value;

use crate::cohomology::ExactnessReport;
use crate::theorems::TheoremReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub id: String,
    pub status: Status,
    pub summary: String,
    pub data: Value,
    pub witness: Option<String>,
}

impl Entry {
    pub fn new(id: impl Into<String>, status: Status, summary: impl Into<String>) -> Entry {
        Entry {
            id: id.into(),
            status,
            summary: summary.into(),
            data: Value::Null,
            witness: None,
        }
    }

    pub fn with_data(mut self, data: impl Serialize) -> Entry {
        self.data = serde_json::to_value(data).expect("report data serializes");
        self
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Entry {
        self.witness = witness;
        self
    }

    /// Pass or fail on the conclusion; skipped when a hypothesis failed.
    pub fn from_theorem(id: impl Into<String>, r: &TheoremReport) -> Entry {
        let failed: Vec<String> = r
            .hypotheses
            .iter()
            .filter(|h| !h.holds)
            .map(|h| h.name.clone())
            .collect();
        let (status, summary) = match r.conclusion_holds {
            Some(true) => (Status::Pass, "conclusion holds".to_string()),
            Some(false) => (Status::Fail, "conclusion fails".to_string()),
            None => (
                Status::Skipped,
                format!("hypothesis not met ({})", failed.join(", ")),
            ),
        };
        let witness = r
            .hypotheses
            .iter()
            .find(|h| !h.holds)
            .and_then(|h| h.witness.clone())
            .or_else(|| r.data.get("witness").filter(|w| !w.is_null()).map(|w| w.to_string()));
        Entry::new(id, status, summary).with_data(r).with_witness(witness)
    }

    pub fn from_exactness(id: impl Into<String>, r: &ExactnessReport) -> Entry {
        let bad: Vec<&str> = r.nodes.iter().filter(|n| !n.exact).map(|n| n.label.as_str()).collect();
        let summary = if bad.is_empty() {
            format!("exact at {} nodes", r.nodes.len())
        } else {
            format!("not exact at {}", bad.join(", "))
        };
        let witness = r.nodes.iter().find(|n| !n.exact).and_then(|n| n.witness.clone());
        Entry::new(id, Status::from_bool(bad.is_empty()), summary)
            .with_data(r)
            .with_witness(witness)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub input: String,
    pub entries: Vec<Entry>,
    pub overall: Overall,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, input: &str, entries: Vec<Entry>, elapsed_ms: u64) -> RunReport {
        let overall = if entries.iter().any(|e| e.status == Status::Fail) {
            Overall::Fail
        } else {
            Overall::Pass
        };
        RunReport {
            schema: "cohomoforge.report.v1".into(),
            command: command.into(),
            input: input.into(),
            entries,
            overall,
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("cohomoforge {} {}\n", self.command, self.input);
        for e in &self.entries {
            out.push_str(&format!("  [{}] {}: {}\n", e.status.label(), e.id, e.summary));
            if e.status == Status::Fail {
                if let Some(w) = &e.witness {
                    out.push_str(&format!("         witness: {w}\n"));
                }
            }
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("overall: {overall} ({} ms)\n", self.elapsed_ms));
        out
    }
}
