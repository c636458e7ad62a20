//! Verification reports, their hash and text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Degenerate => "degenerate",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub subject: String,
    pub check_id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub timing_ms: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub degenerate: usize,
    pub skipped: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Degenerate => self.degenerate += 1,
            Status::Skipped => self.skipped += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.degenerate + self.skipped
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub subjects: usize,
    pub total: Counts,
    pub per_check: BTreeMap<String, Counts>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
    /// SHA-256 over the entries with timings removed.
    pub hash: String,
    pub summary: Summary,
    pub entries: Vec<Entry>,
}

#[derive(Serialize)]
struct Hashed<'a> {
    subject: &'a str,
    check_id: &'a str,
    status: Status,
    reason: &'a Option<String>,
    witness: &'a Option<Value>,
}

pub fn entries_hash(entries: &[Entry]) -> String {
    let stripped: Vec<Hashed> = entries
        .iter()
        .map(|e| Hashed {
            subject: &e.subject,
            check_id: &e.check_id,
            status: e.status,
            reason: &e.reason,
            witness: &e.witness,
        })
        .collect();
    let bytes = serde_json::to_vec(&stripped).expect("entries serialize");
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(entries: Vec<Entry>) -> Self {
        let mut summary = Summary::default();
        let mut subjects: Vec<&str> = entries.iter().map(|e| e.subject.as_str()).collect();
        subjects.dedup();
        summary.subjects = subjects.len();
        for e in &entries {
            summary.total.add(e.status);
            summary.per_check.entry(e.check_id.clone()).or_default().add(e.status);
        }
        let generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            generated_at,
            hash: entries_hash(&entries),
            summary,
            entries,
        }
    }

    /// 1 on any failure, else 2 when some subject could not be built, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.summary.total.fail > 0 {
            1
        } else if self.summary.total.skipped > 0 {
            2
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    /// Check ids that are never evaluated non-degenerately.
    pub fn uncovered(&self) -> Vec<&str> {
        self.summary
            .per_check
            .iter()
            .filter(|(_, c)| c.pass + c.fail == 0)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            if !verbose && e.status == Status::Pass {
                continue;
            }
            let _ = write!(out, "{:<10} {:<22} {}", e.status, e.check_id, e.subject);
            if let Some(r) = &e.reason {
                let _ = write!(out, "  ({r})");
            }
            if let Some(w) = &e.witness {
                let _ = write!(out, "  witness: {w}");
            }
            out.push('\n');
        }
        let t = &self.summary.total;
        let _ = writeln!(
            out,
            "{} subjects, {} entries: {} pass, {} fail, {} degenerate, {} skipped",
            self.summary.subjects,
            t.total(),
            t.pass,
            t.fail,
            t.degenerate,
            t.skipped
        );
        for (id, c) in &self.summary.per_check {
            let _ = writeln!(out, "  {id:<22} pass {:>4}  fail {:>3}  degenerate {:>4}  skipped {:>3}", c.pass, c.fail, c.degenerate, c.skipped);
        }
        let _ = writeln!(out, "hash {}", self.hash);
        out
    }
}
