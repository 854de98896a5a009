//! Report records and their JSON / text rendering.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::{Format, RunConfig};
use super::run::{Cell, Outcome, Param};

pub const SCHEMA_VERSION: u32 = 1;

/// First 16 hex digits of the SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().take(8).fold(String::with_capacity(16), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CellRecord {
    pub index: usize,
    pub check: String,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub param: Option<String>,
    pub trial: usize,
    pub seed: u64,
    pub point_digest: String,
    pub lhs_digest: Option<String>,
    pub rhs_digest: Option<String>,
    pub equal: bool,
    pub max_deviation: Option<f64>,
    pub resamples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub passed: usize,
    pub failed: usize,
    pub resamples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub target: String,
    pub seed: u64,
    pub precision_bits: u32,
    pub tolerance_bits: u32,
    pub cells: Vec<CellRecord>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(config: &RunConfig, cells: &[Cell], outcomes: &[Outcome]) -> Self {
        let records: Vec<CellRecord> = cells
            .iter()
            .zip(outcomes)
            .enumerate()
            .map(|(index, (cell, out))| {
                let subsets = cell.check.uses_subsets();
                CellRecord {
                    index,
                    check: cell.check.name().to_string(),
                    n: cell.n,
                    k: (!subsets).then_some(cell.degree),
                    r: subsets.then_some(cell.degree),
                    param: (cell.param != Param::None).then(|| cell.param.to_string()),
                    trial: cell.trial,
                    seed: config.seed,
                    point_digest: digest(&out.point),
                    lhs_digest: out.lhs.as_deref().map(digest),
                    rhs_digest: out.rhs.as_deref().map(digest),
                    equal: out.equal,
                    max_deviation: out.max_deviation,
                    resamples: out.resamples,
                    elapsed_ms: config.timings.then_some(out.elapsed_ms),
                    detail: out.detail.clone(),
                }
            })
            .collect();
        let passed = records.iter().filter(|r| r.equal).count();
        RunReport {
            schema_version: SCHEMA_VERSION,
            target: config.target.to_string(),
            seed: config.seed,
            precision_bits: config.precision_bits,
            tolerance_bits: config.tolerance_bits,
            summary: Summary {
                cells: records.len(),
                passed,
                failed: records.len() - passed,
                resamples: records.iter().map(|r| r.resamples).sum(),
            },
            cells: records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cells {
            let _ = write!(
                s,
                "{:>5} {} {:<20} n={}",
                c.index,
                if c.equal { "PASS" } else { "FAIL" },
                c.check,
                c.n
            );
            if let Some(k) = c.k {
                let _ = write!(s, " K={k}");
            }
            if let Some(r) = c.r {
                let _ = write!(s, " r={r}");
            }
            if let Some(p) = &c.param {
                let _ = write!(s, " {p}");
            }
            let _ = write!(s, " trial={} point={}", c.trial, c.point_digest);
            if let Some(d) = c.max_deviation {
                let _ = write!(s, " dev={d:.3e}");
            }
            if c.resamples > 0 {
                let _ = write!(s, " resamples={}", c.resamples);
            }
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(s, " {ms:.1}ms");
            }
            if let Some(d) = &c.detail {
                let _ = write!(s, " ({d})");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} seed={} precision={} tolerance={}: {}/{} passed, {} resamples",
            self.target,
            self.seed,
            self.precision_bits,
            self.tolerance_bits,
            self.summary.passed,
            self.summary.cells,
            self.summary.resamples
        );
        s
    }
}
