//! Library side of the `radmom` command: parsing, running and rendering jobs.

pub mod job;
pub mod render;
pub mod run;

use std::fs;
use std::io::Write;

pub use job::{parse_args, parse_batch_line, Format, JobSpec, Mode, Request, UsageError};
pub use run::{compute_records, run, verify_records, verify_state, Outcome};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Success = 0,
    Usage = 1,
    VerificationFailed = 2,
    Io = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Runs the command line `argv` (program name first), writing records to
/// `out` and diagnostics to `err`.
pub fn execute<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let jobs = match parse_args(argv) {
        Ok(Request::Job(job)) => vec![job],
        Ok(Request::Batch(path)) => {
            let text = match fs::read_to_string(&path) {
                Ok(text) => text,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                    return ExitStatus::Io;
                }
            };
            let mut jobs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match parse_batch_line(line, i + 1) {
                    Ok(job) => jobs.push(job),
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        return ExitStatus::Usage;
                    }
                }
            }
            jobs
        }
        Err(Ok(help)) => {
            return match write!(out, "{help}") {
                Ok(()) => ExitStatus::Success,
                Err(_) => ExitStatus::Io,
            };
        }
        Err(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(err, "run with --help for usage");
            return ExitStatus::Usage;
        }
    };

    let mut status = ExitStatus::Success;
    for job in &jobs {
        match run(job, out) {
            Ok(Outcome::Ok) => {}
            Ok(Outcome::VerificationFailed { failed, total }) => {
                let _ = writeln!(err, "verification failed: {failed} of {total} checks");
                status = status.max(ExitStatus::VerificationFailed);
            }
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                return ExitStatus::Io;
            }
        }
    }
    if let Err(e) = out.flush() {
        let _ = writeln!(err, "error: writing output: {e}");
        return ExitStatus::Io;
    }
    status
}
