//! Command-line front end: run configuration, subcommand dispatch, reports
//! and the golden corpus.
//!
//! Every subcommand produces a [`Report`]. Its JSON form depends only on the
//! configuration and the instance, so two runs with the same inputs write
//! byte-identical files. The exit status is 0 for PASS, 1 for FAIL and 2 for
//! INVALID instances and parse errors.

mod args;
mod commands;
pub mod corpus;
mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Status, Verdict};

pub use args::{Cli, Command, GlobalArgs};
pub use commands::run;
pub use parse::{parse_boundary, parse_permutation, parse_word};

/// Largest cell cap accepted on the command line: brute-force enumeration
/// indexes configurations by 64-bit masks.
pub const MAX_CELL_CAP: usize = 40;

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    /// `None` uses every available core.
    pub workers: Option<usize>,
    pub cap_cells: usize,
    /// `-` writes the report to standard output.
    pub json: Option<PathBuf>,
    pub quiet: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, trials: 10, workers: None, cap_cells: crate::model::DEFAULT_CELL_CAP, json: None, quiet: true }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parameters("--trials must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Parameters("--workers must be at least 1".into()));
        }
        if self.cap_cells == 0 || self.cap_cells > MAX_CELL_CAP {
            return Err(Error::CapExceeded { what: "--cap-cells", value: self.cap_cells, cap: MAX_CELL_CAP });
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub(crate) fn check_cells(&self, cells: usize) -> Result<()> {
        if cells > self.cap_cells {
            return Err(Error::CapExceeded { what: "cells", value: cells, cap: self.cap_cells });
        }
        Ok(())
    }
}

impl From<&GlobalArgs> for RunConfig {
    fn from(g: &GlobalArgs) -> Self {
        RunConfig { seed: g.seed, trials: g.trials, workers: g.workers, cap_cells: g.cap_cells, json: g.json.clone(), quiet: g.quiet }
    }
}

/// Machine-readable outcome of one subcommand. Wall time is deliberately
/// absent; it only appears in the human summary.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub seed: u64,
    pub trials: usize,
    pub instance: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str, cfg: &RunConfig, status: Status, instance: Value, result: Value) -> Self {
        Report {
            command: command.to_string(),
            status,
            seed: cfg.seed,
            trials: cfg.trials,
            instance,
            result,
            witness: None,
            detail: None,
            summary: Vec::new(),
        }
    }

    pub fn from_verdict(command: &str, cfg: &RunConfig, instance: Value, verdict: &Verdict) -> Self {
        let mut r = Report::new(command, cfg, verdict.status, instance, serde_json::to_value(verdict).unwrap_or(Value::Null));
        r.witness = verdict.witness.clone();
        r.detail = verdict.detail.clone();
        r.summary.push(format!("{} random points, {} skipped", verdict.stats.points_tried, verdict.stats.skipped));
        r
    }

    pub fn invalid(command: &str, cfg: &RunConfig, err: &Error) -> Self {
        let mut r = Report::new(command, cfg, Status::Invalid, Value::Null, Value::Null);
        r.detail = Some(err.to_string());
        r
    }

    pub fn line(mut self, text: impl Into<String>) -> Self {
        self.summary.push(text.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Runs `command` on a dedicated worker pool sized by `cfg.workers`.
pub fn execute(command: &Command, cfg: &RunConfig) -> Report {
    let name = command.name();
    if let Err(e) = cfg.validate() {
        return Report::invalid(name, cfg, &e);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return Report::invalid(name, cfg, &Error::Parameters(format!("worker pool: {e}"))),
    };
    pool.install(|| run(command, cfg)).unwrap_or_else(|e| Report::invalid(name, cfg, &e))
}

/// Entry point of the `sc6v` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Invalid.exit_code() } else { 0 };
        }
    };
    let cfg = RunConfig::from(&cli.global);
    let start = Instant::now();
    let report = execute(&cli.command, &cfg);
    if let Some(path) = &cfg.json {
        if let Err(e) = write_report(path, &report) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return Status::Invalid.exit_code();
        }
    }
    if !cfg.quiet || report.status == Status::Invalid {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "{}: {}", report.command, report.status.as_str());
        for line in &report.summary {
            let _ = writeln!(err, "  {line}");
        }
        if let Some(d) = &report.detail {
            let _ = writeln!(err, "  {d}");
        }
        if let Some(w) = &report.witness {
            let _ = writeln!(err, "  witness: {w}");
        }
        if !cfg.quiet {
            let _ = writeln!(err, "  wall time {:.2?}", start.elapsed());
        }
    }
    report.exit_code()
}

fn write_report(path: &std::path::Path, report: &Report) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        return std::io::stdout().lock().write_all(report.to_json().as_bytes());
    }
    std::fs::write(path, report.to_json())
}
