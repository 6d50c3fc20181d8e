//! Output helpers shared by the commands.

use homspec::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

/// A finished report in both output formats.
pub struct Report {
    pub json: Value,
    pub table: String,
}

/// `value` rounded to 6 decimal places, ties to even.
pub fn decimal6(value: &Q) -> String {
    let scale = BigInt::from(1_000_000);
    let num = value.numer() * &scale;
    let den = value.denom().clone();
    let (mut quot, rem) = num.div_mod_floor(&den);
    let twice = &rem * 2;
    if twice > den || (twice == den && quot.is_odd()) {
        quot += 1;
    }
    let sign = if quot.is_negative() { "-" } else { "" };
    let (int, frac) = quot.abs().div_rem(&scale);
    format!("{sign}{int}.{frac:06}")
}

pub fn exact(value: &Q) -> String {
    if value.denom() == &BigInt::from(1) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `{exact, decimal}` pair for a rational.
pub fn rational(value: &Q) -> Value {
    json!({ "exact": exact(value), "decimal": decimal6(value) })
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n") + "\n"
}

pub fn list(items: &[usize]) -> String {
    let s: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", s.join(","))
}
