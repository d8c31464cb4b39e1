//! Certificates: the one output shape of every subcommand.
//!
//! Fail certificates always carry a witness that the library can replay.
//! Output is byte-stable for fixed inputs and flags; the runtime field is
//! populated only when `--timings` is passed, so the default output stays
//! reproducible.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Absent,
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub law: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

impl Certificate {
    pub fn new(verdict: Verdict, law: impl Into<String>, instance: impl Into<String>) -> Self {
        Certificate {
            verdict,
            law: law.into(),
            instance: instance.into(),
            witness: None,
            details: None,
            runtime_ms: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Absent => 1,
        }
    }

    pub fn human_summary(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Absent => "absent",
        };
        let mut line = format!("{}: {} [{}]", self.law, verdict, self.instance);
        if let Some(w) = &self.witness {
            line.push_str(&format!("\n  witness: {w}"));
        }
        if let Some(d) = &self.details {
            if let Some(rows) = d.as_array() {
                for r in rows {
                    line.push_str(&format!("\n  {r}"));
                }
            } else {
                line.push_str(&format!("\n  {d}"));
            }
        }
        if let Some(ms) = self.runtime_ms {
            line.push_str(&format!("\n  runtime: {ms} ms"));
        }
        line
    }
}
