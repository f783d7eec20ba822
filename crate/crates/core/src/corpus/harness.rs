use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{materialize_examples, BenchmarkRecord};
use crate::engine::{Engine, DEFAULT_MAX_LEN};
use crate::evaluation::consistent;
use crate::regex::parse;
use crate::syncorr::{transregex, ExternalTool, RepairConfig, RepairInput, Source};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct HarnessOptions {
    pub k_pos: usize,
    pub k_neg: usize,
    pub max_len: usize,
    /// Sampling seed for records that carry no examples.
    pub seed: u64,
    /// Count consistency alone as success, without DFA equivalence.
    pub consistency_only: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            k_pos: 10,
            k_neg: 10,
            max_len: DEFAULT_MAX_LEN,
            seed: 0,
            consistency_only: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Repaired,
    Unrepaired,
    /// No candidate and no way to synthesize one.
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessRow {
    pub id: String,
    pub status: RowStatus,
    pub result: Option<String>,
    pub source: Option<Source>,
    pub consistent: bool,
    pub dfa_equal: bool,
    pub success: bool,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub attempted: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub metric: &'static str,
    pub elapsed_mean_ms: f64,
    pub elapsed_median_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessReport {
    pub rows: Vec<HarnessRow>,
    pub summary: Summary,
}

fn run_one(
    engine: &Engine,
    rec: &BenchmarkRecord,
    cfg: &RepairConfig,
    synthesizer: Option<&ExternalTool>,
    fallback: Option<&ExternalTool>,
    opts: &HarnessOptions,
) -> HarnessRow {
    let start = Instant::now();
    let mut row = HarnessRow {
        id: rec.id.clone(),
        status: RowStatus::Error,
        result: None,
        source: None,
        consistent: false,
        dfa_equal: false,
        success: false,
        error: None,
        elapsed_ms: 0,
    };
    let outcome = (|| -> Result<(), String> {
        let target = rec.target_regex(engine).map_err(|e| e.to_string())?;
        let input = match (&rec.candidate, &rec.description, synthesizer) {
            (Some(c), _, _) => RepairInput::Candidate(parse(c, engine.alphabet()).map_err(|e| format!("candidate: {e}"))?),
            (None, Some(d), Some(_)) => RepairInput::Description(d.clone()),
            _ => {
                row.status = RowStatus::Skipped;
                return Ok(());
            }
        };
        let ex = materialize_examples(engine, rec, opts.k_pos, opts.k_neg, opts.max_len, opts.seed)
            .map_err(|e| e.to_string())?;
        let report = transregex(engine, &input, &ex, synthesizer, fallback, cfg).map_err(|e| e.to_string())?;
        row.source = Some(report.source);
        if !report.tool_errors.is_empty() {
            row.error = Some(report.tool_errors.join("; "));
        }
        match report.outcome.repaired() {
            Some(text) => {
                row.status = RowStatus::Repaired;
                row.result = Some(text.to_string());
                let r = parse(text, engine.alphabet()).map_err(|e| e.to_string())?;
                row.consistent = consistent(engine, &r, &ex).map_err(|e| e.to_string())?;
                row.dfa_equal = engine.equivalent(&r, &target).map_err(|e| e.to_string())?;
            }
            None => row.status = RowStatus::Unrepaired,
        }
        row.success = row.consistent && (opts.consistency_only || row.dfa_equal);
        Ok(())
    })();
    if let Err(e) = outcome {
        row.status = RowStatus::Error;
        row.error = Some(e);
    }
    row.elapsed_ms = start.elapsed().as_millis() as u64;
    row
}

/// Repair every record that has a candidate (or a description plus a
/// synthesizer) and classify each result against its target.
pub fn run_harness(
    engine: &Engine,
    records: &[BenchmarkRecord],
    cfg: &RepairConfig,
    synthesizer: Option<&ExternalTool>,
    fallback: Option<&ExternalTool>,
    opts: &HarnessOptions,
) -> HarnessReport {
    let rows: Vec<HarnessRow> = records
        .par_iter()
        .map(|rec| run_one(engine, rec, cfg, synthesizer, fallback, opts))
        .collect();
    let attempted: Vec<&HarnessRow> = rows.iter().filter(|r| r.status != RowStatus::Skipped).collect();
    let successes = attempted.iter().filter(|r| r.success).count();
    let mut times: Vec<u64> = attempted.iter().map(|r| r.elapsed_ms).collect();
    times.sort_unstable();
    let mean = if times.is_empty() {
        0.0
    } else {
        times.iter().sum::<u64>() as f64 / times.len() as f64
    };
    let median = match times.len() {
        0 => 0.0,
        n if n % 2 == 1 => times[n / 2] as f64,
        n => (times[n / 2 - 1] + times[n / 2]) as f64 / 2.0,
    };
    let summary = Summary {
        records: rows.len(),
        attempted: attempted.len(),
        successes,
        success_rate: if attempted.is_empty() {
            0.0
        } else {
            successes as f64 / attempted.len() as f64
        },
        metric: if opts.consistency_only {
            "consistent"
        } else {
            "consistent_and_equivalent"
        },
        elapsed_mean_ms: mean,
        elapsed_median_ms: median,
    };
    HarnessReport { rows, summary }
}

impl HarnessReport {
    /// Aligned plain-text table, one row per record plus a summary line.
    pub fn to_table(&self) -> String {
        let header = ["id", "status", "consistent", "dfa_equal", "success", "ms", "result"];
        let body: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.id.clone(),
                    format!("{:?}", r.status).to_lowercase(),
                    r.consistent.to_string(),
                    r.dfa_equal.to_string(),
                    r.success.to_string(),
                    r.elapsed_ms.to_string(),
                    r.result.clone().or_else(|| r.error.clone()).unwrap_or_default(),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &body {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[&str]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&header);
        for row in &body {
            line(&row.each_ref().map(String::as_str));
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "success {}/{} ({:.1}%) metric {} mean {:.1} ms median {:.1} ms",
            s.successes,
            s.attempted,
            s.success_rate * 100.0,
            s.metric,
            s.elapsed_mean_ms,
            s.elapsed_median_ms
        );
        out
    }
}
