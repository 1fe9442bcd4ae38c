//! Append-only results cache for the expensive optimizer runs.
//!
//! One JSON record per line, keyed by a content hash over the command, its
//! parameters (including the canonicalized input identities), ω̄, tol,
//! precision, and the artifact version. A record is reused only on an
//! exact key match.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::report::ReportDocument;

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    key: String,
    report: ReportDocument,
}

/// 64-bit FNV-1a over the canonical key material.
pub fn content_hash(parts: &[&str]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for part in parts {
        for b in part.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0x1f;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

pub fn lookup(path: &Path, key: &str) -> Option<ReportDocument> {
    let text = std::fs::read_to_string(path).ok()?;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(rec) = serde_json::from_str::<CacheRecord>(line) {
            if rec.key == key {
                return Some(rec.report);
            }
        }
    }
    None
}

pub fn append(path: &Path, key: &str, report: &ReportDocument) -> std::io::Result<()> {
    let rec = CacheRecord {
        key: key.to_string(),
        report: report.clone(),
    };
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(f, "{}", serde_json::to_string(&rec).expect("serializable"))
}
