//! Exhaustive verification sweeps over all instances up to a size bound,
//! with one JSON report per instance, a CSV summary and a resumable cursor.
//!
//! Instances are processed in fixed-size batches. Each batch is verified
//! (in parallel when `jobs > 1`), its reports are written in instance order,
//! and only then is the cursor advanced, so an interrupted sweep resumes at
//! the first unfinished batch and produces the same files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use shifted_esh::ktheory::{self, Suite};
use shifted_esh::shifted_core::Instance;

use crate::formats::{instance_key, ReportJson, SummaryRow};

const BATCH: usize = 64;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_size: usize,
    pub suites: Vec<Suite>,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    pub out: PathBuf,
    /// Stop after this many instances in this invocation (the sweep can be
    /// resumed later).
    pub limit: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
struct Cursor {
    max_size: usize,
    suites: Vec<String>,
    next: usize,
    total: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SweepSummary {
    pub instances: usize,
    pub total: usize,
    pub words: usize,
    pub theorem_failures: usize,
    pub conjecture_failures: usize,
    /// Whether every instance has been processed.
    pub complete: bool,
    pub resumed_from: usize,
}

fn report_path(out: &Path, i: &Instance) -> PathBuf {
    out.join("reports").join(format!("{}.json", instance_key(i)))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming {}", tmp.display()))?;
    Ok(())
}

fn verify_one(i: &Instance, suites: &[Suite]) -> Result<ReportJson> {
    let r = ktheory::verify(i, suites).with_context(|| format!("verifying {i}"))?;
    Ok(ReportJson::new(&r))
}

/// Runs (or resumes) a sweep, calling `progress` after each batch with the
/// number of finished instances and the total.
pub fn run_sweep(cfg: &SweepConfig, mut progress: impl FnMut(usize, usize)) -> Result<SweepSummary> {
    let instances = Instance::all_up_to(cfg.max_size);
    let suite_names: Vec<String> = cfg.suites.iter().map(|s| s.name().to_string()).collect();
    fs::create_dir_all(cfg.out.join("reports")).with_context(|| format!("creating {}", cfg.out.display()))?;
    let cursor_path = cfg.out.join("cursor.json");
    let fresh = Cursor { max_size: cfg.max_size, suites: suite_names.clone(), next: 0, total: instances.len() };
    let mut cursor = match fs::read(&cursor_path) {
        Ok(bytes) => match serde_json::from_slice::<Cursor>(&bytes) {
            Ok(c) if c.max_size == fresh.max_size && c.suites == fresh.suites && c.total == fresh.total => c,
            _ => fresh,
        },
        Err(_) => fresh,
    };
    let resumed_from = cursor.next;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build()?;
    let stop = cfg.limit.map_or(instances.len(), |l| (cursor.next + l).min(instances.len()));
    while cursor.next < stop {
        let end = (cursor.next + BATCH).min(stop);
        let batch = &instances[cursor.next..end];
        let reports: Vec<Result<ReportJson>> = if cfg.jobs > 1 {
            pool.install(|| batch.par_iter().map(|i| verify_one(i, &cfg.suites)).collect())
        } else {
            batch.iter().map(|i| verify_one(i, &cfg.suites)).collect()
        };
        for (i, r) in batch.iter().zip(reports) {
            let r = r?;
            write_atomic(&report_path(&cfg.out, i), &serde_json::to_vec_pretty(&r)?)?;
        }
        cursor.next = end;
        write_atomic(&cursor_path, &serde_json::to_vec_pretty(&cursor)?)?;
        progress(cursor.next, instances.len());
    }
    let mut summary = SweepSummary { total: instances.len(), resumed_from, ..Default::default() };
    let mut csv = csv::Writer::from_path(cfg.out.join("summary.csv"))?;
    for i in &instances[..cursor.next] {
        let path = report_path(&cfg.out, i);
        let bytes = fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
        let r: ReportJson = serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
        summary.instances += 1;
        summary.words += r.words;
        summary.theorem_failures += usize::from(!r.theorems_pass());
        summary.conjecture_failures += usize::from(!r.conjectures_pass());
        csv.serialize(SummaryRow::new(&r))?;
    }
    csv.flush()?;
    summary.complete = cursor.next == instances.len();
    Ok(summary)
}

/// Parses a suite selector: `all`, `theorems`, `conjectures`, or a
/// comma-separated list of suite names (`-` and `_` are interchangeable; a
/// trailing `-conjecture` is accepted).
pub fn parse_suites(selector: &str) -> Result<Vec<Suite>, String> {
    let mut out = Vec::new();
    for part in selector.split(',').map(|p| p.trim().replace('-', "_")) {
        match part.as_str() {
            "all" => out.extend(Suite::ALL),
            "theorems" => out.extend(Suite::ALL.into_iter().filter(|s| !s.is_conjecture())),
            "conjectures" => out.extend(Suite::ALL.into_iter().filter(|s| s.is_conjecture())),
            name => {
                let bare = name.strip_suffix("_conjecture").unwrap_or(name);
                out.push(Suite::from_name(bare).ok_or_else(|| {
                    let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    format!("unknown suite {name:?}; expected all, theorems, conjectures or one of {}", known.join(", "))
                })?);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
