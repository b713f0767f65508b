//! Argument parsing and validation into [`JobSpec`]s.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use radial_moments::{QuantumState, Rational};
use serde::Deserialize;
use thiserror::Error;

const DEFAULT_KMIN: i64 = 0;
const DEFAULT_KMAX: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Compute,
    Verify,
}

/// Bad command line or batch line; exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// One fully validated unit of work.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub states: Vec<QuantumState>,
    pub kmin: i64,
    pub kmax: i64,
    pub z: Rational,
    pub format: Format,
    pub mode: Mode,
    pub decimals: Option<u32>,
}

/// What the command line asks for.
#[derive(Debug, Clone, PartialEq)]
pub enum Request {
    Job(JobSpec),
    Batch(PathBuf),
}

/// Raw job fields shared by the command line and batch lines.
#[derive(Debug, Clone, Default, Parser, Deserialize)]
#[command(
    name = "radmom",
    about = "Exact radial moments <r^k> of d-dimensional hydrogen-like states",
    after_help = "Ranges are inclusive, written A..B (or a single integer).\n\
                  Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 I/O error."
)]
#[serde(deny_unknown_fields)]
pub struct RawJob {
    /// Principal quantum number (single state)
    #[arg(long)]
    pub n: Option<u32>,
    /// Orbital quantum number (single state)
    #[arg(long)]
    pub l: Option<u32>,
    /// Spatial dimension (single state)
    #[arg(long)]
    pub d: Option<u32>,
    /// Range of n for a grid of states
    #[arg(long, value_name = "A..B")]
    pub grid_n: Option<String>,
    /// Range of l for a grid; clipped to n-1 per state (default: all)
    #[arg(long, value_name = "A..B")]
    pub grid_l: Option<String>,
    /// Range of d for a grid (default: 3)
    #[arg(long, value_name = "A..B")]
    pub grid_d: Option<String>,
    /// Lowest moment order
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<i64>,
    /// Highest moment order
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<i64>,
    /// Nuclear charge used in the unit annotation, as p/q
    #[arg(long = "Z", value_name = "p/q", allow_hyphen_values = true)]
    #[serde(alias = "Z")]
    pub z: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Also render values as decimals with this many digits
    #[arg(long)]
    pub decimals: Option<u32>,
    /// File of JSON-lines job descriptions
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub batch: Option<PathBuf>,
}

/// Parses the process arguments (including the program name).
///
/// Help and version requests surface as `Err(Ok(text))`.
pub fn parse_args<I, S>(argv: I) -> Result<Request, Result<String, UsageError>>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let raw = match RawJob::try_parse_from(argv) {
        Ok(raw) => raw,
        Err(e) => {
            use clap::error::ErrorKind;
            return Err(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(e.to_string()),
                _ => Err(usage(e.to_string().trim_end().to_string())),
            });
        }
    };
    if let Some(path) = raw.batch.clone() {
        if raw.has_job_fields() {
            return Err(Err(usage(
                "--batch cannot be combined with other job arguments",
            )));
        }
        return Ok(Request::Batch(path));
    }
    raw.validate().map(Request::Job).map_err(Err)
}

/// Parses one JSON-lines batch entry.
pub fn parse_batch_line(line: &str, lineno: usize) -> Result<JobSpec, UsageError> {
    let raw: RawJob = serde_json::from_str(line)
        .map_err(|e| usage(format!("batch line {lineno}: {e}")))?;
    raw.validate()
        .map_err(|e| usage(format!("batch line {lineno}: {}", e.0)))
}

impl RawJob {
    fn has_job_fields(&self) -> bool {
        self.n.is_some()
            || self.l.is_some()
            || self.d.is_some()
            || self.grid_n.is_some()
            || self.grid_l.is_some()
            || self.grid_d.is_some()
            || self.kmin.is_some()
            || self.kmax.is_some()
            || self.z.is_some()
            || self.format.is_some()
            || self.mode.is_some()
            || self.decimals.is_some()
    }

    pub fn validate(&self) -> Result<JobSpec, UsageError> {
        let single = self.n.is_some() || self.l.is_some() || self.d.is_some();
        let grid = self.grid_n.is_some() || self.grid_l.is_some() || self.grid_d.is_some();
        let states = match (single, grid) {
            (true, true) => {
                return Err(usage("--n/--l/--d cannot be combined with --grid-* arguments"))
            }
            (true, false) => vec![self.single_state()?],
            (false, true) => self.grid_states()?,
            (false, false) => return Err(usage("no state given: use --n/--l/--d or --grid-n")),
        };
        let kmin = self.kmin.unwrap_or(DEFAULT_KMIN);
        let kmax = self.kmax.unwrap_or(DEFAULT_KMAX);
        if kmin > kmax {
            return Err(usage(format!(
                "--kmin ({kmin}) must not exceed --kmax ({kmax})"
            )));
        }
        let z = match &self.z {
            Some(text) => parse_charge(text)?,
            None => Rational::from_integer(BigInt::from(1)),
        };
        Ok(JobSpec {
            states,
            kmin,
            kmax,
            z,
            format: self.format.unwrap_or(Format::Table),
            mode: self.mode.unwrap_or(Mode::Compute),
            decimals: self.decimals,
        })
    }

    fn single_state(&self) -> Result<QuantumState, UsageError> {
        let n = self.n.ok_or_else(|| usage("--n is required for a single state"))?;
        let l = self.l.unwrap_or(0);
        let d = self.d.unwrap_or(3);
        if n < 1 {
            return Err(usage(format!("invalid --n {n}: n must be at least 1")));
        }
        if d < 2 {
            return Err(usage(format!("invalid --d {d}: d must be at least 2")));
        }
        if l > n - 1 {
            return Err(usage(format!(
                "invalid --l {l}: l must satisfy l <= n-1 (n={n})"
            )));
        }
        QuantumState::new(n, l, d).map_err(|e| usage(e.to_string()))
    }

    fn grid_states(&self) -> Result<Vec<QuantumState>, UsageError> {
        let (n_lo, n_hi) = match &self.grid_n {
            Some(r) => parse_range("--grid-n", r)?,
            None => (1, 1),
        };
        let (d_lo, d_hi) = match &self.grid_d {
            Some(r) => parse_range("--grid-d", r)?,
            None => (3, 3),
        };
        let l_range = match &self.grid_l {
            Some(r) => Some(parse_range("--grid-l", r)?),
            None => None,
        };
        if n_lo < 1 {
            return Err(usage("invalid --grid-n: n must be at least 1"));
        }
        if d_lo < 2 {
            return Err(usage("invalid --grid-d: d must be at least 2"));
        }
        let mut states = Vec::new();
        for n in n_lo..=n_hi {
            let (l_lo, l_hi) = l_range.unwrap_or((0, n - 1));
            for l in l_lo..=l_hi.min(n - 1) {
                for d in d_lo..=d_hi {
                    states.push(QuantumState::new(n, l, d).map_err(|e| usage(e.to_string()))?);
                }
            }
        }
        if states.is_empty() {
            return Err(usage("grid contains no valid (n, l, d) states"));
        }
        states.sort();
        Ok(states)
    }
}

/// Inclusive `A..B` or a single `A`.
pub fn parse_range(flag: &str, text: &str) -> Result<(u32, u32), UsageError> {
    let bad = || usage(format!("malformed range for {flag}: '{text}' (expected A..B)"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let lo: u32 = lo.parse().map_err(|_| bad())?;
    let hi: u32 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Positive rational charge `p/q` or `p`.
pub fn parse_charge(text: &str) -> Result<Rational, UsageError> {
    let bad = || usage(format!("invalid --Z '{text}': expected a positive rational p/q"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    let z = Rational::new(p, q);
    if z <= Rational::zero() {
        return Err(bad());
    }
    Ok(z)
}
