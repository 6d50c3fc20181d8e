use crate::render::{decimal6, exact, rational, table, Report, SCHEMA};
use homspec::m211::{election_report, top_entries, Ballot, DecompositionReport, ElectionReport};
use homspec::{Error, Result};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::path::Path;

const HEADER: [&str; 3] = ["president", "director", "count"];

/// Reads ballots, collecting every malformed row with its line number.
pub fn read_ballots(path: &Path, n: usize) -> Result<Vec<Ballot>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let header = reader.headers().map_err(|e| Error::InvalidInput(format!("line 1: {e}")))?.clone();
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(Error::InvalidInput(format!("line 1: expected header `{}`", HEADER.join(","))));
    }
    let mut ballots = Vec::new();
    let mut problems = Vec::new();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                problems.push(format!("line {line}: {e}"));
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line());
        match parse_row(&record, n) {
            Ok(b) => ballots.push(b),
            Err(msg) => problems.push(format!("line {line}: {msg}")),
        }
    }
    if !problems.is_empty() {
        return Err(Error::InvalidInput(format!("malformed ballots\n{}", problems.join("\n"))));
    }
    Ok(ballots)
}

fn parse_row(record: &csv::StringRecord, n: usize) -> std::result::Result<Ballot, String> {
    if record.len() != 3 {
        return Err(format!("expected 3 fields, found {}", record.len()));
    }
    let candidate = |field: &str, what: &str| -> std::result::Result<usize, String> {
        let v: usize = field.parse().map_err(|_| format!("{what} `{field}` is not a positive integer"))?;
        if v < 1 || v > n {
            return Err(format!("{what} {v} outside 1..{n}"));
        }
        Ok(v)
    };
    let president = candidate(&record[0], "president")?;
    let director = candidate(&record[1], "director")?;
    if president == director {
        return Err(format!("president and director are both {president}"));
    }
    let count: i64 = record[2].parse().map_err(|_| format!("count `{}` is not a nonnegative integer", &record[2]))?;
    if count < 0 {
        return Err(format!("count {count} is negative"));
    }
    Ok(Ballot { president, director, count })
}

fn chain_json(r: &DecompositionReport) -> Value {
    let total: homspec::Q = r.components.iter().map(|c| c.norm_sq.clone()).sum();
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            let top: Vec<Value> = top_entries(&c.vector, 3)
                .unwrap_or_default()
                .iter()
                .map(|e| json!({ "president": e.president, "director": e.director, "value": rational(&e.value) }))
                .collect();
            json!({
                "name": c.name,
                "interpretation": c.interpretation,
                "dimension": c.dimension,
                "energy": rational(&c.norm_sq),
                "largest_entries": top,
            })
        })
        .collect();
    json!({
        "chain": r.chain_label,
        "components": components,
        "parseval": {
            "input_energy": rational(&r.input_norm_sq),
            "component_sum": rational(&total),
            "holds": total == r.input_norm_sq,
        },
    })
}

fn chain_table(r: &DecompositionReport) -> String {
    let rows: Vec<Vec<String>> = r
        .components
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.dimension.to_string(),
                exact(&c.norm_sq),
                decimal6(&c.norm_sq),
                c.interpretation.clone(),
            ]
        })
        .collect();
    format!(
        "decomposition `{}` (‖f‖² = {})\n{}",
        r.chain_label,
        exact(&r.input_norm_sq),
        table(&["component", "dim", "energy", "decimal", "meaning"], &rows)
    )
}

pub fn render(report: &ElectionReport) -> Report {
    let tally = top_entries(&report.tally, 5).unwrap_or_default();
    let tally_json: Vec<Value> = tally
        .iter()
        .map(|e| json!({ "president": e.president, "director": e.director, "votes": e.value.to_integer().to_i64() }))
        .collect();
    let json = json!({
        "schema": SCHEMA,
        "command": "election",
        "n": report.n,
        "total_votes": report.total_votes,
        "top_pairs": tally_json,
        "decompositions": report.chains.iter().map(chain_json).collect::<Vec<_>>(),
    });
    let mut text = format!("{} candidates, {} votes\n\n", report.n, report.total_votes);
    for c in &report.chains {
        text += &chain_table(c);
        text += "\n";
    }
    Report { json, table: text }
}

pub fn run(path: &Path, n: usize) -> Result<Report> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("n = {n}; at least 4 candidates are required")));
    }
    if n > 7 {
        return Err(Error::InvalidInput(format!("n = {n}; election analysis supports n ≤ 7")));
    }
    let ballots = read_ballots(path, n)?;
    Ok(render(&election_report(n, &ballots)?))
}
