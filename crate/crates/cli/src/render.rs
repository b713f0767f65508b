//! Output records and their json / csv / table renderings.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use radial_moments::Rational;
use serde::{Deserialize, Serialize};

use crate::job::Format;

/// Canonical exact string: reduced `p/q`, or `p` when `q = 1`.
pub fn exact_string(x: &Rational) -> String {
    x.to_string()
}

/// `x` rounded half-to-even to `digits` places after the point.
pub fn decimal_string(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x.numer().abs() * &scale;
    let denom = x.denom();
    let (mut q, r) = scaled.div_rem(denom);
    let twice = r * 2u32;
    if twice > *denom || (twice == *denom && q.is_odd()) {
        q += 1u32;
    }
    let negative = x.is_negative() && !q.is_zero();
    let mut digits_str = q.to_str_radix(10);
    let width = digits as usize + 1;
    if digits_str.len() < width {
        digits_str = format!("{}{digits_str}", "0".repeat(width - digits_str.len()));
    }
    let (int_part, frac_part) = digits_str.split_at(digits_str.len() - digits as usize);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// `(a0/Z)^k` with `Z` substituted.
pub fn unit_string(z: &Rational, k: i64) -> String {
    if z.is_integer() {
        format!("(a0/{z})^{k}")
    } else {
        format!("(a0/({z}))^{k}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeRecord {
    pub n: u32,
    pub l: u32,
    pub d: u32,
    pub k: i64,
    pub exists: bool,
    pub value: Option<String>,
    pub decimal: Option<String>,
    pub unit: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Oracle,
    TwoTerm,
    Residual,
    ClosedForm,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::TwoTerm => "two_term",
            Check::Residual => "residual",
            Check::ClosedForm => "closed_form",
        }
    }
}

/// One verification check, flattened.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub n: u32,
    pub l: u32,
    pub d: u32,
    pub check: Check,
    pub k: i64,
    pub exists: bool,
    pub recurrence: Option<String>,
    pub reference: Option<String>,
    pub pass: bool,
}

pub trait Row: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn opt(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

impl Row for ComputeRecord {
    const COLUMNS: &'static [&'static str] =
        &["n", "l", "d", "k", "exists", "value", "decimal", "unit"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.l.to_string(),
            self.d.to_string(),
            self.k.to_string(),
            self.exists.to_string(),
            opt(&self.value),
            opt(&self.decimal),
            self.unit.clone(),
        ]
    }
}

impl Row for VerifyRecord {
    const COLUMNS: &'static [&'static str] = &[
        "n", "l", "d", "check", "k", "exists", "recurrence", "reference", "pass",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.l.to_string(),
            self.d.to_string(),
            self.check.as_str().to_string(),
            self.k.to_string(),
            self.exists.to_string(),
            opt(&self.recurrence),
            opt(&self.reference),
            self.pass.to_string(),
        ]
    }
}

/// JSON array, one record per line.
pub fn write_json<R: Row>(out: &mut dyn Write, rows: &[R]) -> io::Result<()> {
    if rows.is_empty() {
        return writeln!(out, "[]");
    }
    writeln!(out, "[")?;
    for (i, row) in rows.iter().enumerate() {
        let line = serde_json::to_string(row).map_err(io::Error::other)?;
        let sep = if i + 1 < rows.len() { "," } else { "" };
        writeln!(out, "{line}{sep}")?;
    }
    writeln!(out, "]")
}

/// Writes the first `columns` columns; compute-mode CSV drops the unit annotation.
pub fn write_csv<R: Row>(out: &mut dyn Write, rows: &[R], columns: usize) -> io::Result<()> {
    let columns = columns.min(R::COLUMNS.len());
    writeln!(out, "{}", R::COLUMNS[..columns].join(","))?;
    for row in rows {
        writeln!(out, "{}", row.cells()[..columns].join(","))?;
    }
    Ok(())
}

pub fn write_table<R: Row>(out: &mut dyn Write, rows: &[R]) -> io::Result<()> {
    let cells: Vec<Vec<String>> = rows.iter().map(Row::cells).collect();
    let widths: Vec<usize> = R::COLUMNS
        .iter()
        .enumerate()
        .map(|(c, head)| {
            cells
                .iter()
                .map(|r| r[c].chars().count())
                .chain(std::iter::once(head.len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(R::COLUMNS.to_vec()))?;
    for r in &cells {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

pub fn write_rows<R: Row>(
    out: &mut dyn Write,
    rows: &[R],
    format: Format,
    csv_columns: usize,
) -> io::Result<()> {
    match format {
        Format::Json => write_json(out, rows),
        Format::Csv => write_csv(out, rows, csv_columns),
        Format::Table => write_table(out, rows),
    }
}
