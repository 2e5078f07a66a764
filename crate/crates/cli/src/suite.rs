//! TOML job files.
//!
//! ```toml
//! [defaults]
//! window = "2,1"
//!
//! [[job]]
//! id = "ext-translation"
//! args = ["fock", "ext", "--xi", "exp(i*1*t)*d1", "--eta", "exp(i*-1*t)*x1*d1"]
//! expect = "pass"
//! ```
//!
//! `defaults` supplies shared flags that a job's own arguments override.
//! Jobs run concurrently; records come back ordered by job id.

use crate::args::{Cli, Command, Common};
use crate::report::{Record, Status};
use crate::{exit_code, execute, Outcome};
use serde::Deserialize;
use superfock::error::Error;
use superfock::fock::matrix::map_columns;
use superfock::fock::Exec;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    pub dim: Option<String>,
    pub window: Option<String>,
    pub margin: Option<String>,
    pub aux: Option<String>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub id: String,
    pub args: Vec<String>,
    pub expect: Option<Expect>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    #[serde(default)]
    pub defaults: Defaults,
    #[serde(default, rename = "job")]
    pub jobs: Vec<Job>,
}

pub fn parse_suite(text: &str) -> Result<SuiteFile, Error> {
    let suite: SuiteFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|s| {
                let before = &text[..s.start];
                let line = before.matches('\n').count() + 1;
                (line, s.start - before.rfind('\n').map_or(0, |k| k + 1) + 1)
            })
            .unwrap_or((0, 0));
        Error::parse(line, column, e.message().to_string())
    })?;
    let mut ids: Vec<&str> = suite.jobs.iter().map(|j| j.id.as_str()).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Invalid(format!("duplicate job id `{}`", w[0])));
    }
    Ok(suite)
}

fn merged(defaults: &Defaults, own: Common) -> Common {
    Common {
        dim: own.dim.or_else(|| defaults.dim.clone()),
        window: own.window.or_else(|| defaults.window.clone()),
        margin: own.margin.or_else(|| defaults.margin.clone()),
        aux: own.aux.or_else(|| defaults.aux.clone()),
        format: own.format,
    }
}

fn run_job(job: &Job, defaults: &Defaults) -> Outcome {
    let mut out = job_outcome(job, defaults);
    for r in &mut out.records {
        r.job = job.id.clone();
    }
    out
}

fn job_outcome(job: &Job, defaults: &Defaults) -> Outcome {
    let argv = std::iter::once("superfock".to_string()).chain(job.args.iter().cloned());
    let cli = match <Cli as clap::Parser>::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string().lines().next().unwrap_or_default().to_string();
            return Outcome { records: vec![Record::new("job arguments", "suite").verdict(msg)], code: 2 };
        }
    };
    if matches!(cli.command, Command::Suite(_)) {
        let r = Record::new("job arguments", "suite").verdict("suites cannot nest");
        return Outcome { records: vec![r], code: 2 };
    }
    let common = merged(defaults, cli.common);
    let mut out = match execute(&cli.command, &common) {
        Ok(records) => {
            let code = if records.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 };
            Outcome { records, code }
        }
        Err(e) => Outcome { records: vec![Record::new("job error", "suite").verdict(e.to_string())], code: exit_code(&e) },
    };
    match job.expect {
        Some(Expect::Fail) if out.code == 1 => {
            for r in &mut out.records {
                if r.status == Status::Fail {
                    r.status = Status::Xfail;
                }
            }
            out.code = 0;
        }
        Some(Expect::Fail) if out.code == 0 => {
            out.records.push(Record::new("expectation", "suite").verdict("declared to fail but passed"));
            out.code = 1;
        }
        _ => {}
    }
    out
}

pub fn run_suite(suite: &SuiteFile, exec: Exec) -> Outcome {
    let mut order: Vec<&Job> = suite.jobs.iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));
    let results = map_columns(exec, order.len(), |k| run_job(order[k], &suite.defaults));
    let code = results.iter().map(|o| o.code).max().unwrap_or(0);
    Outcome { records: results.into_iter().flat_map(|o| o.records).collect(), code }
}
