//! Batch front end: parses flags and job files, runs checks, renders reports.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 on malformed
//! input and 3 when a requested margin is too small for exact results.

pub mod args;
pub mod checks;
pub mod report;
pub mod suite;

use args::{Cli, Command, Common, Suite};
use clap::Parser;
use report::{render, Format, Record, Status};
use std::io::Write;
use std::time::Instant;
use superfock::error::Error;
use superfock::fock::Exec;

/// Records of one command together with its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InsufficientMargin(_) => 3,
        _ => 2,
    }
}

/// Runs a non-suite command with resolved shared flags.
pub fn execute(cmd: &Command, common: &Common) -> Result<Vec<Record>, Error> {
    let start = Instant::now();
    let mut records = match cmd {
        Command::Jacobi(a) => checks::jacobi(a)?,
        Command::Modealg(m) => checks::modealg(m)?,
        Command::Fock(f) => checks::fock(f, &checks::Setting::resolve(common)?)?,
        Command::Gauge(g) => checks::gauge(g, &checks::Setting::resolve(common)?)?,
        Command::Suite(_) => return Err(Error::Invalid("suite commands run through `run`".into())),
    };
    let wall = start.elapsed() / records.len().max(1) as u32;
    for r in &mut records {
        r.wall = wall;
    }
    Ok(records)
}

fn outcome(cmd: &Command, common: &Common) -> Outcome {
    if let Command::Suite(Suite::Run { file }) = cmd {
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => return failure(Error::Invalid(format!("{file}: {e}"))),
        };
        return match suite::parse_suite(&text) {
            Ok(s) => suite::run_suite(&s, Exec::default()),
            Err(e) => failure(e),
        };
    }
    match execute(cmd, common) {
        Ok(records) => {
            let code = i32::from(records.iter().any(|r| r.status == Status::Fail));
            Outcome { records, code }
        }
        Err(e) => failure(e),
    }
}

fn failure(e: Error) -> Outcome {
    Outcome { code: exit_code(&e), records: vec![Record::new("error", "input").verdict(e.to_string())] }
}

/// Entry point shared by the binary and the tests; `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let result = outcome(&cli.command, &cli.common);
    let text = render(&result.records, cli.common.format.unwrap_or(Format::Text));
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    result.code
}
