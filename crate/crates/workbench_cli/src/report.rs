//! Report types, the per-property recorder and text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::SuiteConfig;

/// Verdict for a single check or a whole property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// A failure the theory predicts was observed, which confirms the prediction.
    PaperPredicted,
    Skipped,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::PaperPredicted => "paper-predicted",
            Status::Skipped => "skipped",
            Status::Fail => "FAIL",
        }
    }

    /// Whether the status counts as success for exit codes.
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }
}

/// One named check inside a property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Outcome of one property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub status: Status,
    pub checks: Vec<CheckLine>,
    /// Path of the stored witness file, if one was written.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Wall-clock time, present only when timings were requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Build facts that affect results, recorded so reports can be compared across machines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub version: String,
    pub os: String,
    pub arch: String,
    pub parallel: bool,
}

impl Fingerprint {
    pub fn current() -> Self {
        Fingerprint {
            version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            parallel: cfg!(feature = "parallel"),
        }
    }
}

/// Full suite outcome, with properties ordered by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub environment: Fingerprint,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    /// Worst status over all properties, ignoring skips.
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.status.is_ok())
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "seed {} | groups {} | max cube dim {} | stage cap {}",
            c.seed,
            c.groups.join(","),
            c.max_cube_dim,
            c.stage_cap
        );
        for p in &self.properties {
            let time = p.elapsed_ms.map(|t| format!(" ({t} ms)")).unwrap_or_default();
            let _ = writeln!(out, "{:<16} {}{time}", p.status.label(), p.name);
            for check in &p.checks {
                let _ = writeln!(out, "  {:<16} {}: {}", check.status.label(), check.name, check.detail);
            }
            if let Some(w) = &p.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        let verdict = if self.passed() { "all properties hold" } else { "property violated" };
        let _ = writeln!(out, "{verdict}");
        out
    }
}

/// Collects checks for one property; the first failure may carry a witness payload.
#[derive(Debug, Default)]
pub struct Recorder {
    pub(crate) checks: Vec<CheckLine>,
    pub(crate) witness: Option<serde_json::Value>,
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(CheckLine { name: name.into(), status, detail: detail.into() });
    }

    /// Records an ordinary check.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
        ok
    }

    /// Records a predicted failure: confirming it is a success of the prediction.
    pub fn predicted(&mut self, name: impl Into<String>, confirmed: bool, detail: impl Into<String>) -> bool {
        self.push(name, if confirmed { Status::PaperPredicted } else { Status::Fail }, detail);
        confirmed
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(name, Status::Skipped, reason);
    }

    /// Keeps the first witness offered.
    pub fn witness(&mut self, payload: serde_json::Value) {
        self.witness.get_or_insert(payload);
    }

    /// Overall status: any failure fails; otherwise confirmed predictions beat plain passes;
    /// a property with only skipped checks is skipped.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::PaperPredicted) {
            Status::PaperPredicted
        } else if !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        }
    }
}
