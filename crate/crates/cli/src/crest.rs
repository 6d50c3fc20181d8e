use crate::render::{list, rational, table, Report, SCHEMA};
use homspec::schemes::crested::{composition_multiplicity_table, CompositionInput, InnerRow};
use homspec::schemes::*;
use homspec::symmetric::Permutation;
use homspec::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::Path;

/// One permutation action as written in a spec file; points are 1-based.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub base_point: usize,
    #[serde(default)]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub normal_generators: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowSpec {
    pub label: String,
    pub multiplicity: u64,
    pub dimension: u64,
    #[serde(default)]
    pub in_delta0: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub outer: Vec<RowSpec>,
    pub inner: Vec<RowSpec>,
    pub block: Vec<RowSpec>,
    pub num_blocks: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrestFile {
    pub inner: ActionSpec,
    #[serde(default)]
    pub outer: Option<ActionSpec>,
    #[serde(default)]
    pub representations: Option<RepresentationSpec>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn to_zero_based(points: &[usize], degree: usize, what: &str) -> Result<Vec<usize>> {
    points
        .iter()
        .map(|&p| {
            if p < 1 || p > degree {
                return Err(Error::InvalidInput(format!("{what}: point {p} outside 1..{degree}")));
            }
            Ok(p - 1)
        })
        .collect()
}

fn perms(images: &[Vec<usize>], degree: usize, what: &str) -> Result<Vec<Permutation>> {
    images
        .iter()
        .map(|img| {
            if img.len() != degree {
                return Err(Error::InvalidInput(format!(
                    "{what}: generator has {} images on {degree} points",
                    img.len()
                )));
            }
            Permutation::new(img)
        })
        .collect()
}

impl ActionSpec {
    pub fn action(&self) -> Result<FiniteAction> {
        if self.base_point < 1 || self.base_point > self.degree {
            return Err(Error::InvalidInput(format!("base_point {} outside 1..{}", self.base_point, self.degree)));
        }
        FiniteAction::new(self.degree, perms(&self.generators, self.degree, "generators")?, self.base_point - 1)
    }

    pub fn partition(&self) -> Result<Option<InvariantPartition>> {
        self.partition
            .as_ref()
            .map(|blocks| {
                let b =
                    blocks.iter().map(|b| to_zero_based(b, self.degree, "partition")).collect::<Result<Vec<_>>>()?;
                InvariantPartition::new(self.degree, b)
            })
            .transpose()
    }

    fn normal(&self) -> Result<Option<Vec<Permutation>>> {
        self.normal_generators.as_ref().map(|g| perms(g, self.degree, "normal_generators")).transpose()
    }
}

fn one_based(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

fn witness_json(w: &IdealWitness) -> Value {
    json!({
        "holds": w.holds,
        "classes": w.classes,
        "scalars": w.scalars.iter().map(|s| s.as_ref().map_or(Value::Null, rational)).collect::<Vec<_>>(),
    })
}

fn scheme_report(act: &FiniteAction, part: &InvariantPartition, text: &mut String) -> Result<Value> {
    let dec = suborbits(act)?;
    let sim = sim_classes(&dec, part)?;
    let approx = approx_classes(&dec, part)?;
    let central = block_indicator_is_central(&dec, part)?;
    let right = ideal_check(&dec, part, Side::Right)?;
    let left = ideal_check(&dec, part, Side::Left)?;
    let coincide = {
        let (mut a, mut b) = (sim.clone(), approx.clone());
        a.sort();
        b.sort();
        a == b
    };
    if coincide != central {
        return Err(Error::ContractViolation(
            "relations_coincide_iff_central: ∼ = ≈ disagrees with centrality of 1_{B_0}".into(),
        ));
    }
    if !right.holds || !left.holds {
        return Err(Error::ContractViolation("ideal_partition: the convolution identity failed".into()));
    }
    let rows: Vec<Vec<String>> = dec
        .orbits
        .iter()
        .enumerate()
        .map(|(j, o)| vec![j.to_string(), o.len().to_string(), list(&one_based(o))])
        .collect();
    *text += &format!("suborbits of the stabilizer of point {}:\n", act.base_point() + 1);
    *text += &table(&["j", "size", "points"], &rows);
    let fmt = |c: &[Vec<usize>]| c.iter().map(|x| list(x)).collect::<Vec<_>>().join(" ");
    *text += &format!("∼ classes: {}\n≈ classes: {}\n", fmt(&sim), fmt(&approx));
    *text += &format!("1_B0 central: {central}\n");
    let scalars: Vec<String> =
        right.scalars.iter().map(|s| s.as_ref().map_or("-".into(), crate::render::exact)).collect();
    *text += &format!("right ideal witnesses m_i: {}\n", scalars.join(" "));
    Ok(json!({
        "degree": act.degree(),
        "base_point": act.base_point() + 1,
        "suborbits": dec.orbits.iter().map(|o| one_based(o)).collect::<Vec<_>>(),
        "sim_classes": sim,
        "approx_classes": approx,
        "relations_coincide": coincide,
        "block_indicator_central": central,
        "right_ideal": witness_json(&right),
        "left_ideal": witness_json(&left),
    }))
}

pub fn run(path: &Path) -> Result<Report> {
    let file: CrestFile = read_json(path)?;
    let inner = file.inner.action()?;
    let normal = file.inner.normal()?;
    let part = match (file.inner.partition()?, &normal) {
        (Some(p), _) => p,
        (None, Some(n)) => InvariantPartition::from_orbits(&inner, n),
        (None, None) => return Err(Error::InvalidInput("inner: give a partition or normal_generators".into())),
    };
    let spec = match &file.outer {
        None => None,
        Some(outer_spec) => {
            let Some(normal) = normal else {
                return Err(Error::InvalidInput("inner: crested products need normal_generators".into()));
            };
            let spec = CrestedSpec {
                outer: outer_spec.action()?,
                outer_partition: outer_spec
                    .partition()?
                    .ok_or_else(|| Error::InvalidInput("outer: partition is required".into()))?,
                inner: inner.clone(),
                normal_generators: normal,
                inner_partition: Some(part.clone()),
            };
            spec.validate()?;
            Some(spec)
        }
    };
    let mut text = String::from("inner space\n");
    let mut out = json!({ "schema": SCHEMA, "command": "crest", "inner": scheme_report(&inner, &part, &mut text)? });

    let Some(spec) = spec else {
        return Ok(Report { json: out, table: text });
    };
    let dec = crested_orbits(&spec)?;
    let dy = spec.inner.degree();
    let orbits: Vec<Value> = dec
        .orbits
        .iter()
        .map(|o| {
            json!({
                "outer_suborbit": o.outer_index,
                "inner_suborbits": o.inner_indices,
                "size": o.points.len(),
                "points": o.points.iter().map(|p| [p / dy + 1, p % dy + 1]).collect::<Vec<_>>(),
            })
        })
        .collect();
    out["outer"] = json!({
        "degree": spec.outer.degree(),
        "suborbits": dec.outer.orbits.iter().map(|o| one_based(o)).collect::<Vec<_>>(),
        "inside_base_block": dec.i0,
    });
    out["crested"] = json!({
        "orbit_count": dec.orbits.len(),
        "predicted_count": dec.predicted_count(),
        "brute_force_checked": dec.brute_force_checked,
        "orbits": orbits,
    });
    let rows: Vec<Vec<String>> = dec
        .orbits
        .iter()
        .map(|o| vec![o.outer_index.to_string(), list(&o.inner_indices), o.points.len().to_string()])
        .collect();
    text += &format!(
        "\ncrested orbits on X × Y ({} points): {} found, {} predicted, brute force checked: {}\n",
        spec.size(),
        dec.orbits.len(),
        dec.predicted_count(),
        dec.brute_force_checked
    );
    text += &table(&["Ξ_i", "Λ indices", "size"], &rows);

    if let Some(reps) = &file.representations {
        let rep = |r: &RowSpec| RepRow { label: r.label.clone(), multiplicity: r.multiplicity, dimension: r.dimension };
        let input = CompositionInput {
            outer: reps.outer.iter().map(rep).collect(),
            inner: reps
                .inner
                .iter()
                .map(|r| InnerRow {
                    label: r.label.clone(),
                    multiplicity: r.multiplicity,
                    dimension: r.dimension,
                    in_delta0: r.in_delta0,
                })
                .collect(),
            block: reps.block.iter().map(rep).collect(),
            num_blocks: reps.num_blocks,
            i_count: dec.outer.len(),
            i0_count: dec.i0.len(),
            j_count: dec.inner.len(),
            j_sim_count: dec.sim.len(),
            x_size: spec.outer.degree(),
            y_size: dy,
        };
        let t = composition_multiplicity_table(&input)?;
        out["multiplicities"] = crate::wreath::table_json(&t);
        text += "\nmultiplicities in L(X × Y):\n";
        text += &crate::wreath::table_text(&t);
    }
    Ok(Report { json: out, table: text })
}
