//! Check records and their two renderings.
//!
//! The record format is line-delimited JSON: a header line carrying the
//! schema version, then one object per check. It omits wall time so that
//! identical jobs produce identical bytes.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

pub const SCHEMA: &str = "superfock.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Failed as the suite declared it would.
    Xfail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    /// Job the record belongs to; empty outside suites.
    pub job: String,
    pub name: String,
    /// Identity or quantity the check is about.
    pub anchor: String,
    pub status: Status,
    /// `"0"` exactly when the check passed.
    pub residual: String,
    /// Exact values extracted along the way.
    pub constants: BTreeMap<String, String>,
    #[serde(skip)]
    pub wall: Duration,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Record {
        Record {
            job: String::new(),
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Info,
            residual: "0".into(),
            constants: BTreeMap::new(),
            wall: Duration::ZERO,
        }
    }

    /// Pass iff `residual` is exactly `"0"`.
    pub fn verdict(mut self, residual: impl Into<String>) -> Record {
        self.residual = residual.into();
        self.status = if self.residual == "0" { Status::Pass } else { Status::Fail };
        self
    }

    pub fn constant(mut self, key: &str, value: impl ToString) -> Record {
        self.constants.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Serialize)]
struct Header<'a> {
    schema: &'a str,
    records: usize,
    failed: usize,
}

pub fn failed(records: &[Record]) -> usize {
    records.iter().filter(|r| r.status == Status::Fail).count()
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Records => render_records(records),
        Format::Text => render_text(records),
    }
}

fn render_records(records: &[Record]) -> String {
    let header = Header { schema: SCHEMA, records: records.len(), failed: failed(records) };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

fn render_text(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Xfail => "XFAIL",
            Status::Info => "INFO",
        };
        let job = if r.job.is_empty() { String::new() } else { format!("[{}] ", r.job) };
        let _ = writeln!(out, "{status} {job}{} ({}) {:.3}s", r.name, r.anchor, r.wall.as_secs_f64());
        for (k, v) in &r.constants {
            let _ = writeln!(out, "    {k} = {v}");
        }
        if matches!(r.status, Status::Fail | Status::Xfail) {
            let _ = writeln!(out, "    residual: {}", r.residual);
        }
    }
    let _ = writeln!(out, "{} checks, {} failed", records.len(), failed(records));
    out
}
