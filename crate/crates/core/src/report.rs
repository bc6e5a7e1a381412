//! Reports printed by the command-line tool, as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::verify::{CheckConfig, Identity, Mode, Verdict, Witness};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub identity: String,
    pub fs: Vec<String>,
    pub gs: Vec<String>,
    pub residual: String,
    /// Command line that recomputes the residual, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<String>,
}

impl WitnessReport {
    pub fn from_witness(w: &Witness, replay: Option<String>) -> Self {
        WitnessReport {
            identity: w.identity.to_string(),
            fs: w.fs.iter().map(ToString::to_string).collect(),
            gs: w.gs.iter().map(ToString::to_string).collect(),
            residual: w.residual.to_string(),
            replay,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigReport {
    pub max_degree: u32,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub workers: usize,
}

impl ConfigReport {
    pub fn from_config(cfg: &CheckConfig) -> Self {
        let (mode, samples) = match cfg.mode {
            Mode::Exhaustive => ("exhaustive".to_string(), None),
            Mode::Randomized { samples, .. } => ("random".to_string(), Some(samples)),
        };
        ConfigReport {
            max_degree: cfg.max_degree,
            mode,
            samples,
            workers: cfg.workers,
        }
    }
}

/// Everything a run produces. Deterministic for fixed inputs and seed;
/// `elapsed_ms` is only filled in when timing is requested.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub input_digest: String,
    /// `pass`, `fail`, `ok` (computations) or `error`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: Option<u64>,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        let mut hasher = Sha256::new();
        for (k, v) in &inputs {
            hasher.update(k.as_bytes());
            hasher.update([0u8]);
            hasher.update(v.as_bytes());
            hasher.update([0u8]);
        }
        Report {
            command: command.to_string(),
            inputs,
            input_digest: hex::encode(hasher.finalize()),
            verdict: "ok".to_string(),
            exhaustive: None,
            cases: None,
            result: None,
            witness: None,
            config: None,
            seed: None,
            error: None,
            elapsed_ms: None,
            version: VERSION.to_string(),
        }
    }

    pub fn with_verdict(mut self, v: &Verdict, replay: Option<String>) -> Self {
        self.verdict = if v.passed { "pass" } else { "fail" }.to_string();
        self.exhaustive = Some(v.exhaustive);
        self.cases = Some(v.cases);
        self.witness = v
            .witness
            .as_ref()
            .map(|w| WitnessReport::from_witness(w, replay));
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_str() {
            "pass" | "ok" => 0,
            "fail" => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for (k, v) in &self.inputs {
            if v.contains('\n') {
                let _ = writeln!(s, "input {k}:");
                for line in v.lines() {
                    let _ = writeln!(s, "  {line}");
                }
            } else {
                let _ = writeln!(s, "input {k}: {v}");
            }
        }
        let _ = writeln!(s, "input digest: {}", self.input_digest);
        if let Some(c) = &self.config {
            let _ = write!(s, "config: max_degree={} mode={}", c.max_degree, c.mode);
            if let Some(n) = c.samples {
                let _ = write!(s, " samples={n}");
            }
            if let Some(seed) = self.seed {
                let _ = write!(s, " seed={seed}");
            }
            let _ = writeln!(s);
        } else if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        let label = match (self.verdict.as_str(), self.exhaustive) {
            ("pass", Some(false)) => "PASS (sampled, not exhaustive)".to_string(),
            (v, _) => v.to_uppercase(),
        };
        let _ = writeln!(s, "verdict: {label}");
        if let Some(n) = self.cases {
            let _ = writeln!(s, "cases checked: {n}");
        }
        if let Some(r) = &self.result {
            match r {
                serde_json::Value::String(text) => {
                    let _ = writeln!(s, "result: {text}");
                }
                other => {
                    let _ = writeln!(
                        s,
                        "result: {}",
                        serde_json::to_string_pretty(other).expect("value serializes")
                    );
                }
            }
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness ({}):", w.identity);
            if !w.fs.is_empty() {
                let _ = writeln!(s, "  fs: {}", w.fs.join(", "));
            }
            if !w.gs.is_empty() {
                let _ = writeln!(s, "  gs: {}", w.gs.join(", "));
            }
            let _ = writeln!(s, "  residual: {}", w.residual);
            if let Some(r) = &w.replay {
                let _ = writeln!(s, "  replay: {r}");
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {ms} ms");
        }
        let _ = writeln!(s, "version: {}", self.version);
        s
    }
}

/// Shell-quotes a value for a replay command line.
pub fn shell_quote(text: &str) -> String {
    format!("'{}'", text.replace('\'', r"'\''"))
}

pub(crate) fn identity_is_replayable(identity: &Identity) -> bool {
    matches!(identity, Identity::Jacobi)
}
