// SPDX-License-Identifier: MIT OR Apache-2.0
//! Running checks and writing verification reports.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checks::{Check, Suite};
use crate::error::Result;
use crate::formats::to_versioned;
use crate::par::par_map;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Result of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub id: String,
    pub suite: String,
    pub name: String,
    pub status: Status,
    /// Summary on success, inline diff on failure.
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suites: Vec<String>,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn n_failed(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Fail).count()
    }

    /// One line per check, then a summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            s.push_str(&format!("{tag} {:<13} {} ({:.2}s): {}\n", e.id, e.name, e.seconds, e.detail));
        }
        s.push_str(&format!("{} checks, {} failed\n", self.entries.len(), self.n_failed()));
        s
    }

    pub fn to_json(&self) -> Result<String> {
        to_versioned(self)
    }

    /// Writes `<stem>.json` and `<stem>.txt` into `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{stem}.json")), self.to_json()? + "\n")?;
        std::fs::write(dir.join(format!("{stem}.txt")), self.to_text())?;
        Ok(())
    }
}

fn run_one(c: &Check) -> Entry {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let (status, detail) = match outcome {
        Ok(d) => (Status::Pass, d),
        Err(d) => (Status::Fail, d),
    };
    Entry {
        id: c.id.into(),
        suite: c.suite.name().into(),
        name: c.name.into(),
        status,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs the checks in a worker pool; entries are ordered by id.
pub fn run(suites: &[Suite], checks: Vec<Check>) -> VerificationReport {
    let mut entries = par_map(checks, |c| run_one(&c));
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport { suites: suites.iter().map(|s| s.name().to_string()).collect(), entries }
}
