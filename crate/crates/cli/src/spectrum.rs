use crate::render::{exact, rational, table, Report, SCHEMA};
use homspec::mabc::{mabc_decomposition, urn_spectrum};
use homspec::symmetric::Composition;
use homspec::{Error, Result};
use serde_json::{json, Value};

/// Parses `12,13,23` into urn pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|tok| {
            let d: Vec<usize> = tok
                .trim()
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .unwrap_or_default();
            match d.as_slice() {
                [i, j] if (1..=3).contains(i) && (1..=3).contains(j) && i != j => Ok((*i.min(j), *i.max(j))),
                _ => Err(Error::InvalidInput(format!("`{tok}` is not a pair of distinct urns such as 12"))),
            }
        })
        .collect()
}

fn trim(shape: &[usize; 3]) -> Vec<usize> {
    shape.iter().copied().filter(|&x| x > 0).collect()
}

pub fn run(shape: &[usize], pairs: &[(usize, usize)]) -> Result<Report> {
    let parts: [usize; 3] =
        shape.try_into().map_err(|_| Error::InvalidInput(format!("--shape needs three parts, got {}", shape.len())))?;
    let comp = Composition::new(&parts)?;
    let n = comp.n();
    if n > 7 {
        return Err(Error::InvalidInput(format!("n = {n}; spectrum supports n ≤ 7")));
    }
    let mut pairs = pairs.to_vec();
    pairs.sort_unstable();
    pairs.dedup();
    let spectrum = urn_spectrum(parts, &pairs)?;
    let points = comp.multinomial() as usize;
    let covered: usize = spectrum.iter().map(|(_, m)| m).sum();
    let rows: Vec<Vec<String>> = spectrum.iter().map(|(ev, m)| vec![exact(ev), m.to_string()]).collect();
    let labels: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}{j}")).collect();
    let mut text = format!("Σ Δ over pairs {} on M^{comp} ({points} points)\n", labels.join(","));
    text += &table(&["eigenvalue", "multiplicity"], &rows);
    text += &format!("dimension audit: {covered} of {points}\n");
    let mut out = json!({
        "schema": SCHEMA,
        "command": "spectrum",
        "shape": parts,
        "pairs": labels,
        "points": points,
        "eigenvalues": spectrum.iter().map(|(ev, m)| json!({ "eigenvalue": rational(ev), "multiplicity": m })).collect::<Vec<_>>(),
        "dimension_audit": { "covered": covered, "total": points, "holds": covered == points },
    });
    if pairs == [(1, 2)] {
        let blocks = mabc_decomposition(parts[0], parts[1], parts[2])?;
        let attribution: Vec<Value> = blocks
            .iter()
            .map(|b| {
                json!({
                    "k": b.k,
                    "eigenvalue": b.eigenvalue,
                    "dimension": b.dimension,
                    "constituents": b.constituents.iter().map(|(s, d)| json!({ "shape": trim(s), "dimension": d })).collect::<Vec<_>>(),
                })
            })
            .collect();
        out["levels"] = json!(attribution);
        let rows: Vec<Vec<String>> = blocks
            .iter()
            .map(|b| {
                let shapes: Vec<String> = b
                    .constituents
                    .iter()
                    .map(|(s, _)| {
                        let p: Vec<String> = trim(s).iter().map(|x| x.to_string()).collect();
                        format!("({})", p.join(","))
                    })
                    .collect();
                vec![b.k.to_string(), b.eigenvalue.to_string(), b.dimension.to_string(), shapes.join(" ")]
            })
            .collect();
        text += "\nlevels of S_{a+b} × S_c:\n";
        text += &table(&["k", "eigenvalue", "dimension", "constituents"], &rows);
    }
    Ok(Report { json: out, table: text })
}
