use crate::render::{table, Report, SCHEMA};
use homspec::algebra::{
    isotypic_projector_on, multiplicity, point_stabilizer_generators, wielandt_count, RationalOperator,
};
use homspec::gt::{gt_projector, hook_composition, symmetrize_projector, ChainSpec};
use homspec::symmetric::{enumerate_omega, hook_dimension, Composition, Partition};
use homspec::{Error, Matrix, Result};
use serde_json::json;
use std::sync::Arc;

/// Largest `|Ω_a|` for which projectors are built.
pub const MAX_PROJECTOR_POINTS: usize = 420;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ChainKind {
    /// Gelfand-Tsetlin projectors along the chain of the composition.
    Gz,
    /// Symmetrizers on the last `k` coordinates of `(n-k, 1^k)`.
    Sym,
}

fn parts_json(p: &[usize]) -> serde_json::Value {
    json!(p)
}

pub fn run(parts: &[usize], chain: Option<ChainKind>, lambda: Option<&[usize]>) -> Result<Report> {
    let a = Composition::new(parts)?;
    let n = a.n();
    if n > 7 {
        return Err(Error::InvalidInput(format!("n = {n}; decompose supports n ≤ 7")));
    }
    let lambda = lambda.map(Partition::new).transpose()?;
    if let Some(l) = &lambda {
        if l.n() != n {
            return Err(Error::InvalidInput(format!("λ = {l} is not a partition of {n}")));
        }
    }
    let space = Arc::new(enumerate_omega(&a)?);
    if space.len() > MAX_PROJECTOR_POINTS {
        return Err(Error::ResourceCap(format!(
            "|Ω_{a}| = {} exceeds {MAX_PROJECTOR_POINTS} points for explicit projectors",
            space.len()
        )));
    }

    let mut blocks = Vec::new();
    let mut rows = Vec::new();
    let mut sum_sq = 0u64;
    let mut total = Matrix::zeros(space.len(), space.len());
    for lam in Partition::all(n) {
        let m = multiplicity(&lam, &a)?;
        sum_sq += m * m;
        if m == 0 {
            continue;
        }
        let e = isotypic_projector_on(&lam, space.clone())?;
        total = total.add(&e.matrix);
        if lambda.as_ref().is_some_and(|l| *l != lam) {
            continue;
        }
        let d = hook_dimension(&lam);
        let rank = e.projector_rank()?;
        if rank != m * d {
            return Err(Error::ContractViolation(format!("rank of the {lam} projector is {rank}, expected {}", m * d)));
        }
        blocks.push(
            json!({ "lambda": parts_json(lam.parts()), "multiplicity": m, "dimension": d, "projector_rank": rank }),
        );
        rows.push(vec![lam.to_string(), m.to_string(), d.to_string(), rank.to_string()]);
    }
    if total != Matrix::identity(space.len()) {
        return Err(Error::ContractViolation("isotypic projectors do not sum to the identity".into()));
    }
    let orbits = wielandt_count(&point_stabilizer_generators(&space, 0), &space)? as u64;
    if orbits != sum_sq {
        return Err(Error::ContractViolation(format!("{orbits} stabilizer orbits but Σ m² = {sum_sq}")));
    }

    let mut text = format!("M^{a}: {} points, n = {n}\n\n", space.len());
    text += &table(&["lambda", "multiplicity", "dimension", "projector rank"], &rows);
    text += &format!("\nWielandt: {orbits} stabilizer orbits, Σ m² = {sum_sq}\n");

    let mut out = json!({
        "schema": SCHEMA,
        "command": "decompose",
        "composition": parts_json(a.parts()),
        "n": n,
        "points": space.len(),
        "isotypic": blocks,
        "wielandt": { "orbit_count": orbits, "sum_of_squares": sum_sq, "holds": true },
    });
    if let Some(kind) = chain {
        let (value, chain_text) = match kind {
            ChainKind::Gz => gz_chain(&a, &space)?,
            ChainKind::Sym => sym_chain(&a)?,
        };
        out["chain"] = value;
        text += &chain_text;
    }
    Ok(Report { json: out, table: text })
}

fn gz_chain(a: &Composition, space: &Arc<homspec::symmetric::OmegaIndex>) -> Result<(serde_json::Value, String)> {
    let chain = ChainSpec::new(a.clone());
    if a.len() < 2 {
        return Err(Error::InvalidInput("the gz chain needs at least two parts".into()));
    }
    let n = a.n();
    let mut sum = Matrix::zeros(space.len(), space.len());
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for j in 2..=a.len() {
        let e = gt_projector(&chain, j)?;
        let rank = e.projector_rank()?;
        sum = sum.add(&e.matrix);
        items.push(json!({ "label": format!("E_{j}"), "j": j, "rank": rank }));
        rows.push(vec![format!("E_{j}"), rank.to_string()]);
    }
    let standard = isotypic_projector_on(&Partition::new(&[n - 1, 1])?, space.clone())?;
    let matches = sum == standard.matrix;
    if !matches {
        return Err(Error::ContractViolation("GT projectors do not sum to the S^{n-1,1} isotypic projector".into()));
    }
    let text = format!(
        "\nGelfand-Tsetlin projectors onto copies of S^{{n-1,1}}:\n{}sum equals the isotypic projector: {matches}\n",
        table(&["projector", "rank"], &rows)
    );
    Ok((json!({ "kind": "gz", "projectors": items, "sum_equals_isotypic": matches }), text))
}

fn sym_chain(a: &Composition) -> Result<(serde_json::Value, String)> {
    let n = a.n();
    let k = if a.len() == n { n } else { a.parts().iter().rev().take_while(|&&p| p == 1).count() };
    if k == 0 || hook_composition(n, k)? != *a {
        return Err(Error::InvalidInput(format!("the sym chain needs a composition (n-k,1^k), got {a}")));
    }
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut sum: Option<RationalOperator> = None;
    for lam in Partition::all(k) {
        let e = symmetrize_projector(&lam, n)?;
        let rank = e.projector_rank()?;
        items.push(json!({ "label": lam.to_string(), "lambda": lam.parts(), "rank": rank }));
        rows.push(vec![lam.to_string(), rank.to_string()]);
        sum = Some(match sum {
            None => e,
            Some(s) => s.add(&e),
        });
    }
    let identity = sum.as_ref().is_some_and(|s| s.matrix == Matrix::identity(s.space.len()));
    if !identity {
        return Err(Error::ContractViolation("symmetrizers do not sum to the identity".into()));
    }
    let text = format!(
        "\nSymmetrizers on the last {k} coordinates:\n{}sum is the identity: {identity}\n",
        table(&["lambda", "rank"], &rows)
    );
    Ok((json!({ "kind": "sym", "k": k, "projectors": items, "sum_is_identity": identity }), text))
}
