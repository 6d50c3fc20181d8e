use crate::crest::{read_json, ActionSpec};
use crate::render::{table, Report, SCHEMA};
use homspec::algebra::MultiplicityTable;
use homspec::schemes::expo::{exponentiation_action, stabilizer_orbit_count};
use homspec::schemes::*;
use homspec::{Error, Result};
use serde_json::{json, Value};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Variant {
    /// `F ≀ C_2` on `Y × Y` from the multiplicities of `L(Y)`.
    C2,
    /// Multiplicity-free `L(Y)` with `G` acting on `X`.
    Free,
    /// Caller-supplied rows audited against a total dimension.
    General,
}

/// Parses `label:multiplicity:dimension,...`.
pub fn parse_rows(s: &str) -> Result<Vec<RepRow>> {
    s.split(',')
        .map(|tok| {
            let f: Vec<&str> = tok.trim().split(':').collect();
            let bad = || Error::InvalidInput(format!("`{tok}` is not label:multiplicity:dimension"));
            if f.len() != 3 || f[0].is_empty() {
                return Err(bad());
            }
            Ok(RepRow {
                label: f[0].to_string(),
                multiplicity: f[1].parse().map_err(|_| bad())?,
                dimension: f[2].parse().map_err(|_| bad())?,
            })
        })
        .collect()
}

pub fn table_json(t: &MultiplicityTable) -> Value {
    json!({
        "rows": t.rows.iter().map(|r| json!({ "label": r.label, "multiplicity": r.multiplicity, "dimension": r.dimension })).collect::<Vec<_>>(),
        "sum_of_squares": t.sum_sq().to_string(),
        "total_dimension": t.total_dimension().to_string(),
    })
}

pub fn table_text(t: &MultiplicityTable) -> String {
    let rows: Vec<Vec<String>> =
        t.rows.iter().map(|r| vec![r.label.clone(), r.multiplicity.to_string(), r.dimension.to_string()]).collect();
    format!(
        "{}Σ m² = {}, Σ m·dim = {}\n",
        table(&["representation", "multiplicity", "dimension"], &rows),
        t.sum_sq(),
        t.total_dimension()
    )
}

/// Compares `Σ m²` with the stabilizer orbit count of the explicit action.
fn verify(t: &MultiplicityTable, f: &FiniteAction, g: &FiniteAction) -> Result<Value> {
    match exponentiation_action(f, g, None) {
        Ok(act) => {
            let orbits = stabilizer_orbit_count(&act)?;
            if orbits as u128 != t.sum_sq() {
                return Err(Error::ContractViolation(format!(
                    "wielandt: {orbits} stabilizer orbits but Σ m² = {}",
                    t.sum_sq()
                )));
            }
            Ok(json!({ "status": "verified", "points": act.degree(), "orbit_count": orbits }))
        }
        Err(Error::ResourceCap(msg)) => Ok(json!({ "status": "unverified at this scale", "reason": msg })),
        Err(e) => Err(e),
    }
}

pub struct WreathArgs<'a> {
    pub variant: Variant,
    pub reps: Option<&'a str>,
    pub dims: Option<&'a [u64]>,
    pub outer: Option<&'a Path>,
    pub inner: Option<&'a Path>,
    pub total: Option<u128>,
}

pub fn run(args: &WreathArgs) -> Result<Report> {
    let inner = args.inner.map(|p| read_json::<ActionSpec>(p)?.action()).transpose()?;
    let mut out = json!({ "schema": SCHEMA, "command": "wreath" });
    let mut text = String::new();
    let (t, check) = match args.variant {
        Variant::C2 => {
            let reps = parse_rows(args.reps.ok_or_else(|| Error::InvalidInput("--reps is required for c2".into()))?)?;
            let t = expo_c2(&reps)?;
            out["variant"] = json!("c2");
            text += "L(Y × Y) under F ≀ C_2\n";
            let c2 = FiniteAction::from_images(2, &[vec![1, 0]], 0)?;
            let check = inner.as_ref().map(|f| verify(&t, f, &c2)).transpose()?;
            (t, check)
        }
        Variant::Free => {
            let dims = args.dims.ok_or_else(|| Error::InvalidInput("--dims is required for free".into()))?;
            let outer_path = args.outer.ok_or_else(|| Error::InvalidInput("--outer is required for free".into()))?;
            let g = read_json::<ActionSpec>(outer_path)?.action()?;
            let (t, orbits) = expo_multiplicity_free(dims, &g, 1, None)?;
            out["variant"] = json!("free");
            out["function_orbits"] = json!(orbits
                .iter()
                .map(
                    |o| json!({ "representative": o.representative, "size": o.size, "inertia_order": o.inertia.len() })
                )
                .collect::<Vec<_>>());
            text += &format!("L(Y^X) under F ≀ G, |X| = {}\n", g.degree());
            let check = inner.as_ref().map(|f| verify(&t, f, &g)).transpose()?;
            (t, check)
        }
        Variant::General => {
            let reps =
                parse_rows(args.reps.ok_or_else(|| Error::InvalidInput("--reps is required for general".into()))?)?;
            let total = args.total.ok_or_else(|| Error::InvalidInput("--total is required for general".into()))?;
            out["variant"] = json!("general");
            text += "supplied decomposition\n";
            (expo_general(&reps, total)?, None)
        }
    };
    out["multiplicities"] = table_json(&t);
    text += &table_text(&t);
    if let Some(c) = check {
        text += &format!("brute force: {}\n", c["status"].as_str().unwrap_or(""));
        out["brute_force"] = c;
    }
    Ok(Report { json: out, table: text })
}
