//! Rendering of verification results, either as plain text lines or as a
//! single JSON object for downstream tooling.

use crate::proto::NamedCheck;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

/// Accumulates named pass/fail checks and computed values for one command.
#[derive(Serialize)]
pub struct Report {
    command: String,
    verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<CheckOut>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    values: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            verdict: "pass".to_string(),
            checks: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    pub fn push_check(&mut self, check: &NamedCheck) {
        if !check.holds {
            self.verdict = "fail".to_string();
        }
        self.checks.push(CheckOut {
            name: check.name.to_string(),
            holds: check.holds,
            witness: check.witness.clone(),
        });
    }

    pub fn push_checks(&mut self, checks: &[NamedCheck]) {
        for c in checks {
            self.push_check(c);
        }
    }

    pub fn set_value(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut out = serde_json::to_string_pretty(self).expect("report serializes");
                out.push('\n');
                out
            }
            Format::Text => {
                let mut out = String::new();
                for (key, value) in &self.values {
                    out.push_str(&format!("{key}: {value}\n"));
                }
                for c in &self.checks {
                    if c.holds {
                        out.push_str(&format!("PASS {}\n", c.name));
                    } else {
                        match &c.witness {
                            Some(w) => out.push_str(&format!("FAIL {} ({w})\n", c.name)),
                            None => out.push_str(&format!("FAIL {}\n", c.name)),
                        }
                    }
                }
                out.push_str(&format!("verdict: {}\n", self.verdict));
                out
            }
        }
    }
}
