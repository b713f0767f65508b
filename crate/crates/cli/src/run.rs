//! Compute and verify drivers.

use std::io::{self, Write};

use radial_moments::{
    closed_form_r_polynomial, closed_form_r_reduced, full_table, invert_two_term,
    kramers_residual, oracle_moment, MomentEntry, QuantumState, Rational,
};
use rayon::prelude::*;

use crate::job::{JobSpec, Mode};
use crate::render::{
    decimal_string, exact_string, unit_string, write_rows, Check, ComputeRecord, VerifyRecord,
};

/// Number of leading columns written in compute-mode CSV.
const COMPUTE_CSV_COLUMNS: usize = 7;

fn engine_error(s: &QuantumState, e: radial_moments::MomentError) -> ! {
    panic!("moment engine failed for {s} inside its documented range: {e}")
}

pub fn compute_records(job: &JobSpec) -> Vec<ComputeRecord> {
    let per_state: Vec<Vec<ComputeRecord>> = job
        .states
        .par_iter()
        .map(|s| {
            let table = full_table::<Rational>(s, job.kmin, job.kmax)
                .unwrap_or_else(|e| engine_error(s, e));
            table
                .iter()
                .map(|(k, entry)| {
                    let value = entry.value();
                    ComputeRecord {
                        n: s.n(),
                        l: s.l(),
                        d: s.d(),
                        k,
                        exists: entry.exists(),
                        value: value.map(exact_string),
                        decimal: job
                            .decimals
                            .and_then(|digits| value.map(|v| decimal_string(v, digits))),
                        unit: unit_string(&job.z, k),
                    }
                })
                .collect()
        })
        .collect();
    let mut rows: Vec<_> = per_state.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.n, r.l, r.d, r.k));
    rows
}

/// All four cross-checks for one state.
///
/// The oracle comparison covers `[kmin, kmax]`; the two-term check covers
/// every admissible inversion index; residuals cover every order in
/// `[bound + 2, kmax]`; the closed form is checked at `k = 1`.
pub fn verify_state(s: &QuantumState, kmin: i64, kmax: i64) -> Vec<VerifyRecord> {
    let bound = s.existence_bound();
    let big_l = s.grand_angular();
    let top = kmax.max(big_l).max(1);
    let table =
        full_table::<Rational>(s, kmin.min(bound), top).unwrap_or_else(|e| engine_error(s, e));
    let record = |check, k, exists, recurrence: Option<&Rational>, reference: Option<&Rational>, pass| {
        VerifyRecord {
            n: s.n(),
            l: s.l(),
            d: s.d(),
            check,
            k,
            exists,
            recurrence: recurrence.map(exact_string),
            reference: reference.map(exact_string),
            pass,
        }
    };
    let mut out = Vec::new();

    for k in kmin..=kmax {
        match table.entry(k) {
            Some(MomentEntry::Exists(v)) => {
                let oracle = oracle_moment::<Rational>(s, k).ok();
                let pass = oracle.as_ref() == Some(v);
                out.push(record(Check::Oracle, k, true, Some(v), oracle.as_ref(), pass));
            }
            _ => {
                let pass = oracle_moment::<Rational>(s, k).is_err();
                out.push(record(Check::Oracle, k, false, None, None, pass));
            }
        }
    }

    for j in 0..big_l {
        let target = -j - 2;
        let inverted = table
            .moment(j - 1)
            .and_then(|m| invert_two_term(s, j, &m).ok());
        let descended = table.get(target);
        let pass = inverted.is_some() && descended == inverted.as_ref().map(|m| &m.value);
        out.push(record(
            Check::TwoTerm,
            target,
            true,
            descended,
            inverted.as_ref().map(|m| &m.value),
            pass,
        ));
    }

    for k in (bound + 2)..=kmax {
        let zero = Rational::default();
        match kramers_residual(s, k, &table) {
            Ok(r) => {
                let pass = r.is_zero();
                out.push(record(Check::Residual, k, true, Some(&r.residual), Some(&zero), pass));
            }
            Err(_) => out.push(record(Check::Residual, k, true, None, Some(&zero), false)),
        }
    }

    let reduced = closed_form_r_reduced::<Rational>(s);
    let expanded = closed_form_r_polynomial::<Rational>(s);
    let m1 = table.get(1);
    let pass = m1 == Some(&reduced) && reduced == expanded;
    out.push(record(Check::ClosedForm, 1, true, m1, Some(&expanded), pass));

    out.sort_by_key(|r| (r.k, r.check));
    out
}

pub fn verify_records(job: &JobSpec) -> Vec<VerifyRecord> {
    let per_state: Vec<Vec<VerifyRecord>> = job
        .states
        .par_iter()
        .map(|s| verify_state(s, job.kmin, job.kmax))
        .collect();
    let mut rows: Vec<_> = per_state.into_iter().flatten().collect();
    // stable: keeps (k, check) order inside each state
    rows.sort_by_key(|r| (r.n, r.l, r.d, r.k));
    rows
}

/// Result of one job, before mapping to a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed { failed: usize, total: usize },
}

pub fn run(job: &JobSpec, out: &mut dyn Write) -> io::Result<Outcome> {
    match job.mode {
        Mode::Compute => {
            let rows = compute_records(job);
            write_rows(out, &rows, job.format, COMPUTE_CSV_COLUMNS)?;
            Ok(Outcome::Ok)
        }
        Mode::Verify => {
            let rows = verify_records(job);
            write_rows(out, &rows, job.format, usize::MAX)?;
            let failed = rows.iter().filter(|r| !r.pass).count();
            Ok(if failed == 0 {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed {
                    failed,
                    total: rows.len(),
                }
            })
        }
    }
}
