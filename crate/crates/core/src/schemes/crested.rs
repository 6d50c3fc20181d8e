//! Crested products: the group `(F^diag · N^𝒫) ⋊ G` acting on `X × Y`,
//! the closed-form orbits of its point stabilizer, and the matching
//! multiplicity table of `L(X × Y)`.

use super::action::{
    check_bi_invariant, require, sim_classes, suborbits, FiniteAction, InvariantPartition, SuborbitDecomposition,
};
use crate::algebra::MultiplicityTable;
use crate::error::{contract, invalid, Result};
use crate::linalg::Q;
use crate::symmetric::Permutation;
use num_traits::Zero;
use std::collections::HashSet;

/// `G` on `X` with a `G`-invariant partition `𝒫`, and `F` on `Y` with a
/// normal subgroup `N` whose orbits form `𝒬`.
#[derive(Clone, Debug)]
pub struct CrestedSpec {
    pub outer: FiniteAction,
    pub outer_partition: InvariantPartition,
    pub inner: FiniteAction,
    pub normal_generators: Vec<Permutation>,
    /// `𝒬`, if given explicitly; it must equal the orbit partition of `N`.
    pub inner_partition: Option<InvariantPartition>,
}

impl CrestedSpec {
    /// Checks the hypotheses and returns `𝒬`.
    pub fn validate(&self) -> Result<InvariantPartition> {
        if self.outer_partition.degree() != self.outer.degree() {
            return invalid("outer partition degree differs from the outer action");
        }
        if !self.outer_partition.is_invariant(self.outer.generators()) {
            return invalid("outer_partition_invariant: 𝒫 is not G-invariant");
        }
        if !self.outer.is_transitive() || !self.inner.is_transitive() {
            return invalid("transitive: both actions must be transitive");
        }
        let dy = self.inner.degree();
        if let Some(n) = self.normal_generators.iter().find(|n| n.degree() != dy) {
            return invalid(format!("normal generator of degree {} on {dy} points", n.degree()));
        }
        let n_group = FiniteAction::new(dy, self.normal_generators.clone(), self.inner.base_point())?;
        let elems: HashSet<&Permutation> = n_group.elements()?.iter().collect();
        for f in self.inner.generators() {
            let finv = f.inverse();
            for n in &self.normal_generators {
                if !elems.contains(&f.compose(n).compose(&finv)) {
                    return invalid("normal_subgroup: N is not normalized by F");
                }
            }
        }
        let q = InvariantPartition::from_orbits(&self.inner, &self.normal_generators);
        if let Some(given) = &self.inner_partition {
            if *given != q {
                return invalid(
                    "normal_orbits: 𝒬 is not the orbit partition of N (N must be transitive on each block)",
                );
            }
        }
        Ok(q)
    }

    pub fn size(&self) -> usize {
        self.outer.degree() * self.inner.degree()
    }

    /// Generators of the crested product on `X × Y`, point `(x, y)` at
    /// `x·|Y| + y`: diagonal `F`, each `N`-generator on each block of `𝒫`,
    /// and `G`.
    pub fn group_generators(&self) -> Vec<Permutation> {
        let (dx, dy) = (self.outer.degree(), self.inner.degree());
        let total = dx * dy;
        let mut gens = Vec::new();
        for u in self.inner.generators() {
            gens.push(Permutation::from_zero_based((0..total).map(|p| (p / dy) * dy + u.image0(p % dy)).collect()));
        }
        for block in self.outer_partition.blocks() {
            for n in &self.normal_generators {
                gens.push(Permutation::from_zero_based(
                    (0..total)
                        .map(|p| if block.contains(&(p / dy)) { (p / dy) * dy + n.image0(p % dy) } else { p })
                        .collect(),
                ));
            }
        }
        for g in self.outer.generators() {
            gens.push(Permutation::from_zero_based((0..total).map(|p| g.image0(p / dy) * dy + p % dy).collect()));
        }
        gens
    }

    pub fn group(&self) -> Result<FiniteAction> {
        FiniteAction::new(
            self.size(),
            self.group_generators(),
            self.outer.base_point() * self.inner.degree() + self.inner.base_point(),
        )
    }
}

/// Label of a crested orbit `Ξ_i × Λ_S` with `S` a set of inner suborbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrestedOrbit {
    pub outer_index: usize,
    pub inner_indices: Vec<usize>,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CrestedDecomposition {
    pub outer: SuborbitDecomposition,
    pub inner: SuborbitDecomposition,
    pub inner_partition: InvariantPartition,
    /// `ℐ_0`: outer suborbits contained in the block `A_0 ∋ x_0`.
    pub i0: Vec<usize>,
    /// `𝒥/∼`.
    pub sim: Vec<Vec<usize>>,
    /// Orbits ordered by smallest point.
    pub orbits: Vec<CrestedOrbit>,
    /// Whether the orbit list was compared against brute force.
    pub brute_force_checked: bool,
}

impl CrestedDecomposition {
    /// `|ℐ_0|·|𝒥| + (|ℐ| − |ℐ_0|)·|𝒥/∼|`.
    pub fn predicted_count(&self) -> usize {
        self.i0.len() * self.inner.len() + (self.outer.len() - self.i0.len()) * self.sim.len()
    }

    pub fn orbit_of_point(&self, p: usize) -> usize {
        self.orbits.iter().position(|o| o.points.binary_search(&p).is_ok()).expect("orbits cover X×Y")
    }
}

/// Orbits of the stabilizer of `(x_0, y_0)` in the crested product:
/// `Ξ_i × Λ_j` for `i ∈ ℐ_0` and `Ξ_i × Λ_[j]` otherwise. When the group
/// is small enough to enumerate, the list is compared with the orbits of
/// the stabilizer found by brute force.
pub fn crested_orbits(spec: &CrestedSpec) -> Result<CrestedDecomposition> {
    let q = spec.validate()?;
    let outer = suborbits(&spec.outer)?;
    let inner = suborbits(&spec.inner)?;
    let a0 = spec.outer_partition.block_of(spec.outer.base_point());
    let i0: Vec<usize> =
        (0..outer.len()).filter(|&i| outer.orbits[i].iter().all(|&x| spec.outer_partition.block_of(x) == a0)).collect();
    let sim = sim_classes(&inner, &q)?;
    let dy = spec.inner.degree();
    let mut orbits = Vec::new();
    for i in 0..outer.len() {
        let groups: Vec<Vec<usize>> =
            if i0.contains(&i) { (0..inner.len()).map(|j| vec![j]).collect() } else { sim.clone() };
        for g in groups {
            let mut points: Vec<usize> = outer.orbits[i]
                .iter()
                .flat_map(|&x| {
                    g.iter().flat_map(|&j| inner.orbits[j].iter().map(move |&y| x * dy + y)).collect::<Vec<_>>()
                })
                .collect();
            points.sort_unstable();
            orbits.push(CrestedOrbit { outer_index: i, inner_indices: g, points });
        }
    }
    orbits.sort_by_key(|o| o.points[0]);
    let mut dec =
        CrestedDecomposition { outer, inner, inner_partition: q, i0, sim, orbits, brute_force_checked: false };
    require(dec.orbits.len() == dec.predicted_count(), "orbit count differs from |ℐ_0||𝒥| + (|ℐ|−|ℐ_0|)|𝒥/∼|")?;
    if let Ok(brute) = brute_force_orbits(spec) {
        let closed: Vec<Vec<usize>> = dec.orbits.iter().map(|o| o.points.clone()).collect();
        if closed != brute {
            return contract("crested_orbits: closed form differs from brute-force stabilizer orbits");
        }
        dec.brute_force_checked = true;
    }
    Ok(dec)
}

/// Orbits on `X × Y` of the stabilizer of `(x_0, y_0)`, found by
/// enumerating the whole crested product.
pub fn brute_force_orbits(spec: &CrestedSpec) -> Result<Vec<Vec<usize>>> {
    let group = spec.group()?;
    let base = group.base_point();
    let stab: Vec<Permutation> = group.elements()?.iter().filter(|g| g.image0(base) == base).cloned().collect();
    Ok(FiniteAction::orbits_of(group.degree(), &stab))
}

/// A row of an irreducible decomposition supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepRow {
    pub label: String,
    pub multiplicity: u64,
    pub dimension: u64,
}

/// An inner row, flagged when it lies in `L(𝒬)` (the set `Δ_0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerRow {
    pub label: String,
    pub multiplicity: u64,
    pub dimension: u64,
    pub in_delta0: bool,
}

/// Inputs of [`composition_multiplicity_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionInput {
    /// `L(X) = ⊕ a_ω V_ω`.
    pub outer: Vec<RepRow>,
    /// `L(Y) = ⊕ b_δ W_δ`.
    pub inner: Vec<InnerRow>,
    /// `L(A_0) = ⊕ c_γ U_γ` under the stabilizer of `A_0`.
    pub block: Vec<RepRow>,
    /// `|𝒫|`.
    pub num_blocks: usize,
    pub i_count: usize,
    pub i0_count: usize,
    pub j_count: usize,
    pub j_sim_count: usize,
    pub x_size: usize,
    pub y_size: usize,
}

fn sum_sq<'a>(it: impl Iterator<Item = &'a u64>) -> u128 {
    it.map(|&m| (m as u128).pow(2)).sum()
}

/// Decomposition of `L(X × Y)` under the crested product: `a_ω b_δ` copies
/// of `V_ω ⊗ W_δ` for `δ ∈ Δ_0`, and `c_γ b_δ` copies of
/// `Ind(U_γ) ⊗ W_δ` for `δ ∉ Δ_0`.
pub fn composition_multiplicity_table(input: &CompositionInput) -> Result<MultiplicityTable> {
    let checks: [(u128, u128, &str); 7] = [
        (sum_sq(input.outer.iter().map(|r| &r.multiplicity)), input.i_count as u128, "Σ a_ω² = |ℐ|"),
        (sum_sq(input.block.iter().map(|r| &r.multiplicity)), input.i0_count as u128, "Σ c_γ² = |ℐ_0|"),
        (sum_sq(input.inner.iter().map(|r| &r.multiplicity)), input.j_count as u128, "Σ b_δ² = |𝒥|"),
        (
            sum_sq(input.inner.iter().filter(|r| r.in_delta0).map(|r| &r.multiplicity)),
            input.j_sim_count as u128,
            "Σ_{Δ_0} b_δ² = |𝒥/∼|",
        ),
        (
            input.outer.iter().map(|r| r.multiplicity as u128 * r.dimension as u128).sum(),
            input.x_size as u128,
            "Σ a_ω dim V_ω = |X|",
        ),
        (
            input.inner.iter().map(|r| r.multiplicity as u128 * r.dimension as u128).sum(),
            input.y_size as u128,
            "Σ b_δ dim W_δ = |Y|",
        ),
        (
            input.block.iter().map(|r| r.multiplicity as u128 * r.dimension as u128).sum::<u128>()
                * input.num_blocks as u128,
            input.x_size as u128,
            "|𝒫| Σ c_γ dim U_γ = |X|",
        ),
    ];
    for (got, want, what) in checks {
        if got != want {
            return invalid(format!("inconsistent input: {what} fails ({got} ≠ {want})"));
        }
    }
    let mut t = MultiplicityTable::default();
    for w in &input.outer {
        for d in input.inner.iter().filter(|d| d.in_delta0) {
            t.push(format!("{}⊗{}", w.label, d.label), w.multiplicity * d.multiplicity, w.dimension * d.dimension);
        }
    }
    for g in &input.block {
        for d in input.inner.iter().filter(|d| !d.in_delta0) {
            t.push(
                format!("Ind({})⊗{}", g.label, d.label),
                g.multiplicity * d.multiplicity,
                input.num_blocks as u64 * g.dimension * d.dimension,
            );
        }
    }
    let expected_sq = input.i_count as u128 * input.j_sim_count as u128
        + input.i0_count as u128 * (input.j_count - input.j_sim_count) as u128;
    if t.sum_sq() != expected_sq {
        return contract(format!("Σ m² = {} but the orbit count is {expected_sq}", t.sum_sq()));
    }
    t.audit_dimension(input.x_size as u128 * input.y_size as u128)?;
    Ok(t)
}

/// Which family of invariant products to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCase {
    /// `φ(x)ψ(y)` with `ψ` from `L(𝒬)`.
    Delta0,
    /// `θ̃(x)ψ(y)` with `θ̃` supported on `A_0`.
    Complement,
}

/// Pointwise products of invariant tables on `X × Y`, checked to be
/// constant on every crested orbit.
pub fn crested_spherical_products(
    dec: &CrestedDecomposition,
    spec: &CrestedSpec,
    phi: &[Q],
    theta: &[Q],
    psi: &[Q],
    case: ProductCase,
) -> Result<Vec<Q>> {
    check_bi_invariant(&dec.outer, phi, "φ")?;
    check_bi_invariant(&dec.inner, psi, "ψ")?;
    let a0 = spec.outer_partition.block_of(spec.outer.base_point());
    if theta.len() != spec.outer.degree() {
        return invalid("θ table has the wrong length");
    }
    for (x, v) in theta.iter().enumerate() {
        if spec.outer_partition.block_of(x) != a0 && !v.is_zero() {
            return invalid(format!("θ is nonzero at point {x} outside A_0"));
        }
    }
    for &i in &dec.i0 {
        let o = &dec.outer.orbits[i];
        if o.iter().any(|&x| theta[x] != theta[o[0]]) {
            return invalid(format!("θ is not constant on the suborbit containing point {}", o[0]));
        }
    }
    let left = match case {
        ProductCase::Delta0 => phi,
        ProductCase::Complement => theta,
    };
    let dy = spec.inner.degree();
    let table: Vec<Q> = (0..spec.size()).map(|p| &left[p / dy] * &psi[p % dy]).collect();
    for o in &dec.orbits {
        let v = &table[o.points[0]];
        if o.points.iter().any(|&p| &table[p] != v) {
            return contract(format!("product table is not constant on the orbit containing point {}", o.points[0]));
        }
    }
    Ok(table)
}
