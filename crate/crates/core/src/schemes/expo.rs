//! The exponentiation action of `F ≀ G` on `Y^X` (optionally times a
//! `G`-space `Z`) and multiplicity tables for its permutation module.

use super::action::{suborbits, FiniteAction};
use super::crested::RepRow;
use crate::algebra::MultiplicityTable;
use crate::error::{contract, invalid, Error, Result};
use crate::symmetric::Permutation;
use std::collections::HashMap;

/// Largest `|Y|^|X|·|Z|` for which the action is built explicitly.
pub const MAX_EXPO_POINTS: usize = 100_000;

fn checked_power(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// `F ≀ G` on `Y^X × Z`. A point `(φ, z)` sits at
/// `(Σ_x φ(x)·|Y|^x)·|Z| + z`. The `k`-th generator of `z_action` must be
/// the image of the `k`-th generator of `g`.
pub fn exponentiation_action(
    f: &FiniteAction,
    g: &FiniteAction,
    z_action: Option<&FiniteAction>,
) -> Result<FiniteAction> {
    let (dy, dx) = (f.degree(), g.degree());
    let dz = z_action.map_or(1, |z| z.degree());
    if let Some(z) = z_action {
        if z.generators().len() != g.generators().len() {
            return invalid("Z must carry one generator per generator of G");
        }
    }
    let funcs = checked_power(dy, dx).filter(|&m| m.checked_mul(dz).is_some_and(|t| t <= MAX_EXPO_POINTS));
    let Some(funcs) = funcs else {
        return Err(Error::ResourceCap(format!("|Y|^|X|·|Z| exceeds {MAX_EXPO_POINTS}")));
    };
    let total = funcs * dz;
    let digits = |p: usize| -> Vec<usize> {
        let mut v = p / dz;
        (0..dx)
            .map(|_| {
                let d = v % dy;
                v /= dy;
                d
            })
            .collect()
    };
    let encode = |phi: &[usize], z: usize| -> usize { phi.iter().rev().fold(0, |acc, &d| acc * dy + d) * dz + z };
    let mut gens = Vec::new();
    for x in 0..dx {
        for u in f.generators() {
            let img = (0..total)
                .map(|p| {
                    let mut phi = digits(p);
                    phi[x] = u.image0(phi[x]);
                    encode(&phi, p % dz)
                })
                .collect();
            gens.push(Permutation::from_zero_based(img));
        }
    }
    for (k, s) in g.generators().iter().enumerate() {
        let img = (0..total)
            .map(|p| {
                let phi = digits(p);
                let mut moved = vec![0; dx];
                for (x, &d) in phi.iter().enumerate() {
                    moved[s.image0(x)] = d;
                }
                let z = z_action.map_or(0, |za| za.generators()[k].image0(p % dz));
                encode(&moved, z)
            })
            .collect();
        gens.push(Permutation::from_zero_based(img));
    }
    let base = encode(&vec![f.base_point(); dx], z_action.map_or(0, |z| z.base_point()));
    FiniteAction::new(total, gens, base)
}

/// Number of orbits of the point stabilizer, i.e. `Σ m²` by Wielandt.
pub fn stabilizer_orbit_count(action: &FiniteAction) -> Result<usize> {
    Ok(suborbits(action)?.len())
}

/// `L(Y × Y)` under `F ≀ C_2` from `L(Y) = ⊕ m_σ V_σ`: `V_σ ⊗ V_σ′`
/// (`σ ≠ σ′`) with `m_σ m_σ′`, and the symmetric and alternating parts of
/// `V_σ ⊗ V_σ` with `m_σ(m_σ+1)/2` and `m_σ(m_σ−1)/2`.
pub fn expo_c2(reps: &[RepRow]) -> Result<MultiplicityTable> {
    if reps.is_empty() {
        return invalid("at least one irreducible is required");
    }
    let mut t = MultiplicityTable::default();
    for r in reps {
        let d2 = r.dimension * r.dimension;
        let m = r.multiplicity;
        t.push(format!("({},+)", r.label), m * (m + 1) / 2, d2);
        t.push(format!("({},-)", r.label), m * m.saturating_sub(1) / 2, d2);
    }
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            t.push(
                format!("({},{})", a.label, b.label),
                a.multiplicity * b.multiplicity,
                2 * a.dimension * b.dimension,
            );
        }
    }
    let y: u128 = reps.iter().map(|r| r.multiplicity as u128 * r.dimension as u128).sum();
    t.audit_dimension(y * y)?;
    Ok(t)
}

/// A `G`-orbit of functions `h : X → {0, …, s−1}` with its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionOrbit {
    /// Lexicographically smallest function in the orbit.
    pub representative: Vec<usize>,
    pub size: usize,
    /// Elements of `G` fixing the representative.
    pub inertia: Vec<Permutation>,
}

/// `G`-orbits on `{0..s−1}^X`, sorted by representative.
pub fn function_orbits(symbols: usize, g: &FiniteAction) -> Result<Vec<FunctionOrbit>> {
    let dx = g.degree();
    let count = checked_power(symbols, dx).filter(|&c| c <= MAX_EXPO_POINTS);
    let Some(count) = count else {
        return Err(Error::ResourceCap(format!("{symbols}^{dx} functions exceed {MAX_EXPO_POINTS}")));
    };
    let elements = g.elements()?;
    let decode = |mut v: usize| -> Vec<usize> {
        (0..dx)
            .map(|_| {
                let d = v % symbols;
                v /= symbols;
                d
            })
            .collect()
    };
    let act = |s: &Permutation, h: &[usize]| -> Vec<usize> {
        let mut out = vec![0; dx];
        for (x, &v) in h.iter().enumerate() {
            out[s.image0(x)] = v;
        }
        out
    };
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut out = Vec::new();
    for code in 0..count {
        let h = decode(code);
        if seen.contains_key(&h) {
            continue;
        }
        let mut orbit: Vec<Vec<usize>> = elements.iter().map(|s| act(s, &h)).collect();
        orbit.sort();
        orbit.dedup();
        for o in &orbit {
            seen.insert(o.clone(), ());
        }
        let rep = orbit[0].clone();
        let inertia = elements.iter().filter(|s| act(s, &rep) == rep).cloned().collect();
        out.push(FunctionOrbit { representative: rep, size: orbit.len(), inertia });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// A representation `η` of an inertia group with its multiplicity in `L(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaRow {
    pub label: String,
    pub dimension: u64,
    pub multiplicity: u64,
}

fn fmt_function(h: &[usize]) -> String {
    let parts: Vec<String> = h.iter().map(|v| v.to_string()).collect();
    format!("h=[{}]", parts.join(","))
}

/// `L(Y^X × Z)` when `L(Y) = ⊕_σ V_σ` is multiplicity free with
/// dimensions `dims`. Each `G`-orbit of `h` contributes
/// `Ind(σ̃_h ⊗ η)` for every `η` of its inertia group, with the
/// multiplicity of `η` in `L(Z)`. Without `eta`, `Z` is a point and only
/// the trivial `η` occurs.
pub fn expo_multiplicity_free(
    dims: &[u64],
    g: &FiniteAction,
    z_size: usize,
    eta: Option<&[Vec<EtaRow>]>,
) -> Result<(MultiplicityTable, Vec<FunctionOrbit>)> {
    let orbits = function_orbits(dims.len(), g)?;
    let mut t = MultiplicityTable::default();
    if let Some(e) = eta {
        if e.len() != orbits.len() {
            return invalid(format!("{} η lists supplied for {} orbits", e.len(), orbits.len()));
        }
    } else if z_size != 1 {
        return invalid("a nontrivial Z needs η rows for every orbit");
    }
    for (k, o) in orbits.iter().enumerate() {
        let base: u64 = o.representative.iter().map(|&s| dims[s]).product::<u64>() * o.size as u64;
        match eta {
            None => t.push(fmt_function(&o.representative), 1, base),
            Some(e) => {
                for r in &e[k] {
                    t.push(
                        format!("{}⊗{}", fmt_function(&o.representative), r.label),
                        r.multiplicity,
                        base * r.dimension,
                    );
                }
            }
        }
    }
    let y: u128 = dims.iter().map(|&d| d as u128).sum();
    t.audit_dimension(y.pow(g.degree() as u32) * z_size as u128)?;
    Ok((t, orbits))
}

/// Caller-supplied rows audited against `|Y|^|X|·|Z|`.
pub fn expo_general(rows: &[RepRow], expected_total: u128) -> Result<MultiplicityTable> {
    let mut t = MultiplicityTable::default();
    for r in rows {
        t.push(r.label.clone(), r.multiplicity, r.dimension);
    }
    t.audit_dimension(expected_total)?;
    Ok(t)
}

/// `G` acting on itself by left multiplication, generators in the order of `g`.
pub fn regular_action(g: &FiniteAction) -> Result<FiniteAction> {
    let elements = g.elements()?;
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|s| Permutation::from_zero_based(elements.iter().map(|e| index[&s.compose(e)]).collect()))
        .collect();
    FiniteAction::new(elements.len(), gens, 0)
}

fn is_abelian(elems: &[Permutation]) -> bool {
    elems.iter().all(|a| elems.iter().all(|b| a.compose(b) == b.compose(a)))
}

/// One row of the regular-representation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRow {
    pub representative: Vec<usize>,
    pub inertia_order: usize,
    /// Orbits of the inertia group on `J × Z`, counted directly.
    pub orbit_count: usize,
    pub multiplicity: u64,
    pub induced_dimension: u64,
}

/// With `F` acting regularly (irreducible dimensions `dims`) and `Z = G`
/// regular, checks for each orbit of `h` and each `η` that the multiplicity,
/// `dim η·|J|·|Z/I|` with `|J| = Π d_{h(x)}`, equals `dim Ind(σ̃ ⊗ η)`.
/// The inertia groups must be abelian so that every `η` is a character.
pub fn regular_representation_check(dims: &[u64], g: &FiniteAction) -> Result<(MultiplicityTable, Vec<RegularRow>)> {
    let orbits = function_orbits(dims.len(), g)?;
    let z = regular_action(g)?;
    let g_order = z.degree();
    let mut t = MultiplicityTable::default();
    let mut rows = Vec::new();
    for o in &orbits {
        if !is_abelian(&o.inertia) {
            return invalid("regular check needs abelian inertia groups");
        }
        // Inertia acts on Z = G by left multiplication; orbits must all be free.
        let elements = g.elements()?;
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let perms: Vec<Permutation> = o
            .inertia
            .iter()
            .map(|s| Permutation::from_zero_based(elements.iter().map(|e| index[&s.compose(e)]).collect()))
            .collect();
        let z_orbits = FiniteAction::orbits_of(g_order, &perms);
        if z_orbits.iter().any(|zo| zo.len() != o.inertia.len()) {
            return contract("inertia group does not act freely on Z");
        }
        let j: u64 = o.representative.iter().map(|&s| dims[s]).product();
        let orbit_count = j as usize * z_orbits.len();
        let induced = j * (g_order / o.inertia.len()) as u64;
        for k in 0..o.inertia.len() {
            let multiplicity = orbit_count as u64;
            if multiplicity != induced {
                return contract(format!(
                    "multiplicity {multiplicity} differs from dim Ind = {induced} for {}",
                    fmt_function(&o.representative)
                ));
            }
            t.push(format!("{}⊗η{k}", fmt_function(&o.representative)), multiplicity, induced);
        }
        rows.push(RegularRow {
            representative: o.representative.clone(),
            inertia_order: o.inertia.len(),
            orbit_count,
            multiplicity: orbit_count as u64,
            induced_dimension: induced,
        });
    }
    let y: u128 = dims.iter().map(|&d| (d * d) as u128).sum();
    t.audit_dimension(y.pow(g.degree() as u32) * g_order as u128)?;
    Ok((t, rows))
}
