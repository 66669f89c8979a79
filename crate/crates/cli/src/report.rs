use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PropertyFails,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::PropertyFails => 1,
            Status::Unknown => 3,
        }
    }
}

/// What a subcommand hands back to the driver.
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    /// Human-readable lines.
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn ok(result: Value, summary: Vec<String>) -> Self {
        Outcome {
            status: Status::Ok,
            result,
            summary,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub source: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Inputs read by a run, keyed by role.
#[derive(Default)]
pub struct Inputs(BTreeMap<String, Fingerprint>);

impl Inputs {
    pub fn read_file(&mut self, role: &str, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.record(role, &path.display().to_string(), &text);
        Ok(text)
    }

    pub fn record(&mut self, role: &str, source: &str, content: &str) {
        self.0.insert(
            role.to_owned(),
            Fingerprint {
                source: source.to_owned(),
                bytes: content.len(),
                sha256: hex::encode(Sha256::digest(content.as_bytes())),
            },
        );
    }
}

/// One run: the payload in `result` depends only on `inputs` and
/// `parameters`.
#[derive(Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub argv: Vec<String>,
    pub inputs: BTreeMap<String, Fingerprint>,
    pub parameters: Value,
    pub status: Status,
    pub result: Value,
    pub timing_ms: u128,
}

impl RunReport {
    pub fn new(subcommand: &'static str, inputs: Inputs, parameters: Value, outcome: &Outcome, timing_ms: u128) -> Self {
        RunReport {
            tool: "dihyp",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            argv: std::env::args().collect(),
            inputs: inputs.0,
            parameters,
            status: outcome.status,
            result: outcome.result.clone(),
            timing_ms,
        }
    }
}
