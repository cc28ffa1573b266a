use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

/// An input as the command line named it, with the digest of its
/// canonical serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub source: String,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub inputs: BTreeMap<String, InputRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

/// Counts and digest of a constructed category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultSummary {
    pub label: String,
    pub objects: usize,
    pub morphisms: usize,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub provenance: Provenance,
    pub results: Vec<ResultSummary>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
    /// Wall-clock milliseconds per phase; only with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_owned(),
            provenance: Provenance {
                inputs: BTreeMap::new(),
                method: None,
                mode: None,
                parameters: BTreeMap::new(),
            },
            results: Vec::new(),
            checks: Vec::new(),
            payload: None,
            timing_ms: None,
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Structured => fincat::io::canonical_json(self),
            OutputFormat::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let p = &self.provenance;
        writeln!(s, "command: {}", self.command).unwrap();
        if let Some(m) = &p.method {
            writeln!(s, "method: {m}").unwrap();
        }
        if let Some(m) = &p.mode {
            writeln!(s, "mode: {m}").unwrap();
        }
        for (k, v) in &p.parameters {
            writeln!(s, "parameter {k}: {v}").unwrap();
        }
        for (k, v) in &p.inputs {
            writeln!(s, "input {k}: {} {}", v.source, v.digest).unwrap();
        }
        for r in &self.results {
            writeln!(
                s,
                "result {}: {} objects, {} morphisms {}",
                r.label, r.objects, r.morphisms, r.digest
            )
            .unwrap();
        }
        for c in &self.checks {
            let verdict = if c.holds { "pass" } else { "FAIL" };
            if c.witness.is_empty() {
                writeln!(s, "check {}: {verdict}", c.name).unwrap();
            } else {
                writeln!(s, "check {}: {verdict} [{}]", c.name, c.witness.join(" ")).unwrap();
            }
        }
        if let Some(v) = &self.payload {
            writeln!(s, "payload: {v}").unwrap();
        }
        if let Some(t) = &self.timing_ms {
            for (k, v) in t {
                writeln!(s, "timing {k}: {v:.3} ms").unwrap();
            }
        }
        s
    }
}
