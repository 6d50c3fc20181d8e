//! The commutant of a permutation module `M^a`.
//!
//! Operators are dense rational matrices indexed by the canonical order of
//! `Ω_a`; column `y` of an operator is its image of `δ_y`. An equivariant
//! operator `T` is determined by its representing kernel
//! `ψ(x) = T[x][x_0]`, which is constant on the orbits of the stabilizer of
//! the base point `x_0`.

use crate::error::{contract, invalid, Error, Result};
use crate::linalg::{q, Matrix, Q};
use crate::symmetric::{
    all_permutations, enumerate_omega, factorial, hook_dimension, sn_character, sn_generators, subgroup_orbits,
    young_generators, Composition, OmegaIndex, Partition, Permutation,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Arc;

/// A function on `Ω_a` with rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    pub space: Arc<OmegaIndex>,
    pub coeffs: Vec<Q>,
}

impl ModuleVector {
    pub fn new(space: Arc<OmegaIndex>, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != space.len() {
            return invalid(format!("vector of length {} on a space of {} points", coeffs.len(), space.len()));
        }
        Ok(ModuleVector { space, coeffs })
    }

    pub fn zeros(space: Arc<OmegaIndex>) -> Self {
        let coeffs = vec![Q::zero(); space.len()];
        ModuleVector { space, coeffs }
    }

    pub fn delta(space: Arc<OmegaIndex>, k: usize) -> Self {
        let mut v = Self::zeros(space);
        v.coeffs[k] = Q::one();
        v
    }

    pub fn norm_sq(&self) -> Q {
        crate::linalg::dot(&self.coeffs, &self.coeffs)
    }

    pub fn dot(&self, other: &ModuleVector) -> Q {
        crate::linalg::dot(&self.coeffs, &other.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    /// The translate `(σf)(x) = f(σ⁻¹x)`.
    pub fn translate(&self, sigma: &Permutation) -> ModuleVector {
        let mut out = vec![Q::zero(); self.coeffs.len()];
        for (k, v) in self.coeffs.iter().enumerate() {
            out[self.space.act_index(sigma, k)] = v.clone();
        }
        ModuleVector { space: self.space.clone(), coeffs: out }
    }
}

/// An endomorphism of `M^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOperator {
    pub space: Arc<OmegaIndex>,
    pub matrix: Matrix,
}

impl RationalOperator {
    pub fn new(space: Arc<OmegaIndex>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != space.len() || matrix.cols() != space.len() {
            return invalid("operator shape does not match its space");
        }
        Ok(RationalOperator { space, matrix })
    }

    pub fn identity(space: Arc<OmegaIndex>) -> Self {
        let matrix = Matrix::identity(space.len());
        RationalOperator { space, matrix }
    }

    pub fn apply(&self, f: &ModuleVector) -> ModuleVector {
        ModuleVector { space: self.space.clone(), coeffs: self.matrix.mul_vec(&f.coeffs) }
    }

    pub fn compose(&self, other: &RationalOperator) -> RationalOperator {
        RationalOperator { space: self.space.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn add(&self, other: &RationalOperator) -> RationalOperator {
        RationalOperator { space: self.space.clone(), matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &RationalOperator) -> RationalOperator {
        RationalOperator { space: self.space.clone(), matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, s: &Q) -> RationalOperator {
        RationalOperator { space: self.space.clone(), matrix: self.matrix.scale(s) }
    }

    /// Rank of a projector, read off as its trace.
    pub fn projector_rank(&self) -> Result<u64> {
        let t = self.matrix.trace();
        if !t.is_integer() || t < Q::zero() {
            return contract(format!("projector trace {t} is not a nonnegative integer"));
        }
        Ok(t.to_integer().try_into().unwrap_or(u64::MAX))
    }
}

/// A linear map `M^a → M^b`; rows follow the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub domain: Arc<OmegaIndex>,
    pub codomain: Arc<OmegaIndex>,
    pub matrix: Matrix,
}

impl Intertwiner {
    pub fn apply(&self, f: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(f)
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Intertwiner) -> Intertwiner {
        Intertwiner {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &Intertwiner) -> Intertwiner {
        Intertwiner {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn scale(&self, s: &Q) -> Intertwiner {
        Intertwiner { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: self.matrix.scale(s) }
    }

    pub fn zero(domain: Arc<OmegaIndex>, codomain: Arc<OmegaIndex>) -> Intertwiner {
        let matrix = Matrix::zeros(codomain.len(), domain.len());
        Intertwiner { domain, codomain, matrix }
    }

    /// True when `P(g)` on the codomain times `self` equals `self` times `P(g)` on the domain.
    pub fn is_equivariant(&self, generators: &[Permutation]) -> bool {
        generators.iter().all(|g| {
            let pd = self.domain.index_permutation(g);
            let pc = self.codomain.index_permutation(g);
            (0..self.codomain.len())
                .all(|r| (0..self.domain.len()).all(|c| self.matrix.get(pc[r], pd[c]) == self.matrix.get(r, c)))
        })
    }
}

/// A composition possibly containing zero parts, realized on the space of
/// its positive parts.
#[derive(Clone, Debug)]
pub(crate) struct PaddedSpace {
    pub omega: Arc<OmegaIndex>,
    padded_of: Vec<usize>,
    stripped_of: Vec<Option<usize>>,
}

impl PaddedSpace {
    pub fn new(parts: &[usize]) -> Result<Self> {
        let positive: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        let comp = Composition::new(&positive)?;
        let omega = Arc::new(enumerate_omega(&comp)?);
        let padded_of = parts.iter().enumerate().filter(|(_, &p)| p > 0).map(|(i, _)| i).collect();
        let mut stripped_of = vec![None; parts.len()];
        let mut k = 0;
        for (i, &p) in parts.iter().enumerate() {
            if p > 0 {
                stripped_of[i] = Some(k);
                k += 1;
            }
        }
        Ok(PaddedSpace { omega, padded_of, stripped_of })
    }

    pub fn from_omega(omega: Arc<OmegaIndex>) -> Self {
        let h = omega.composition().parts().len();
        PaddedSpace { omega, padded_of: (0..h).collect(), stripped_of: (0..h).map(Some).collect() }
    }

    pub fn padded_word(&self, k: usize) -> Vec<u8> {
        self.omega.word(k).iter().map(|&b| self.padded_of[b as usize] as u8).collect()
    }

    pub fn index_of_padded(&self, w: &[u8]) -> usize {
        let s: Vec<u8> = w.iter().map(|&b| self.stripped_of[b as usize].expect("point in empty block") as u8).collect();
        self.omega.index_of_word(&s).expect("word of the right type")
    }
}

fn check_pair(i: usize, j: usize, h: usize) -> Result<()> {
    if i == 0 || j == 0 || i > h || j > h || i == j {
        return invalid(format!("block indices ({i},{j}) must be distinct and in 1..{h}"));
    }
    Ok(())
}

/// `d_{i,j}: M^a → M^{a'}` moving one point of `A_j` into `A_i`, where `a'`
/// has `a_i + 1` and `a_j − 1`. Indices are 1-based.
pub fn d_op(i: usize, j: usize, a: &Composition) -> Result<Intertwiner> {
    check_pair(i, j, a.len())?;
    if a.parts()[j - 1] == 1 {
        return invalid(format!("d_{{{i},{j}}} on {a} empties block {j}"));
    }
    d_op_padded(i, j, a.parts())
}

pub(crate) fn d_op_padded(i: usize, j: usize, parts: &[usize]) -> Result<Intertwiner> {
    check_pair(i, j, parts.len())?;
    if parts[j - 1] == 0 {
        return invalid(format!("d_{{{i},{j}}} needs a nonempty block {j}"));
    }
    let src = PaddedSpace::new(parts)?;
    let mut tparts = parts.to_vec();
    tparts[i - 1] += 1;
    tparts[j - 1] -= 1;
    let dst = PaddedSpace::new(&tparts)?;
    let mut m = Matrix::zeros(dst.omega.len(), src.omega.len());
    let one = Q::one();
    for k in 0..src.omega.len() {
        let w = src.padded_word(k);
        for p in 0..w.len() {
            if w[p] as usize == j - 1 {
                let mut nw = w.clone();
                nw[p] = (i - 1) as u8;
                m.add_at(dst.index_of_padded(&nw), k, &one);
            }
        }
    }
    Ok(Intertwiner { domain: src.omega, codomain: dst.omega, matrix: m })
}

/// `Δ_{i,j}` on `M^a`: the sum over `x ∈ A_j`, `y ∈ A_i` of the swap of `x` and `y`.
pub fn laplace_op(i: usize, j: usize, a: &Composition) -> Result<RationalOperator> {
    check_pair(i, j, a.len())?;
    let space = Arc::new(enumerate_omega(a)?);
    let m = laplace_matrix(i, j, &PaddedSpace::from_omega(space.clone()));
    Ok(RationalOperator { space, matrix: m })
}

pub(crate) fn laplace_matrix(i: usize, j: usize, sp: &PaddedSpace) -> Matrix {
    let len = sp.omega.len();
    let mut m = Matrix::zeros(len, len);
    let one = Q::one();
    for k in 0..len {
        let w = sp.padded_word(k);
        for x in 0..w.len() {
            if w[x] as usize != j - 1 {
                continue;
            }
            for y in 0..w.len() {
                if w[y] as usize == i - 1 {
                    let mut nw = w.clone();
                    nw.swap(x, y);
                    m.add_at(sp.index_of_padded(&nw), k, &one);
                }
            }
        }
    }
    m
}

/// The permutation matrix of `g`: `P[x][y] = 1` iff `x = g·y`.
pub fn permutation_matrix(space: &OmegaIndex, g: &Permutation) -> Matrix {
    let perm = space.index_permutation(g);
    let mut m = Matrix::zeros(space.len(), space.len());
    for (y, &x) in perm.iter().enumerate() {
        m.set(x, y, Q::one());
    }
    m
}

/// Whether `T` commutes with the permutation matrix of every generator.
pub fn equivariance_check(t: &RationalOperator, generators: &[Permutation]) -> bool {
    generators.iter().all(|g| {
        if g.degree() != t.space.n() {
            return false;
        }
        let p = t.space.index_permutation(g);
        let len = t.space.len();
        (0..len).all(|r| (0..len).all(|c| t.matrix.get(p[r], p[c]) == t.matrix.get(r, c)))
    })
}

/// Generators of the stabilizer of the point with index `base`.
pub fn point_stabilizer_generators(space: &OmegaIndex, base: usize) -> Vec<Permutation> {
    let rep = space.coset_rep(base);
    let inv = rep.inverse();
    young_generators(space.composition()).iter().map(|y| rep.compose(y).compose(&inv)).collect()
}

/// The representing kernel `ψ(x) = T[x][x_0]` of an equivariant operator,
/// stored once per orbit of the stabilizer of `x_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantKernel {
    pub space: Arc<OmegaIndex>,
    pub base: usize,
    pub orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    pub values: Vec<Q>,
}

impl InvariantKernel {
    fn skeleton(space: Arc<OmegaIndex>, base: usize) -> Result<Self> {
        let gens = point_stabilizer_generators(&space, base);
        let orbits = subgroup_orbits(&gens, &space)?;
        let mut orbit_of = vec![0; space.len()];
        for (o, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                orbit_of[x] = o;
            }
        }
        let values = vec![Q::zero(); orbits.len()];
        Ok(InvariantKernel { space, base, orbits, orbit_of, values })
    }

    /// `ψ(x)`.
    pub fn value(&self, x: usize) -> &Q {
        &self.values[self.orbit_of[x]]
    }

    pub fn as_vector(&self) -> ModuleVector {
        let coeffs = (0..self.space.len()).map(|x| self.value(x).clone()).collect();
        ModuleVector { space: self.space.clone(), coeffs }
    }

    /// `σ_y` with `σ_y x_0 = y`.
    fn mover(&self, y: usize) -> Permutation {
        self.space.coset_rep(y).compose(&self.space.coset_rep(self.base).inverse())
    }

    /// The kernel of the adjoint operator, `ψ⋄(x) = ψ(σ_x⁻¹ x_0)`.
    pub fn adjoint(&self) -> InvariantKernel {
        let mut out = self.clone();
        for (o, orbit) in self.orbits.iter().enumerate() {
            let x = orbit[0];
            let back = self.space.act_index(&self.mover(x).inverse(), self.base);
            out.values[o] = self.value(back).clone();
        }
        out
    }

    /// Expands the kernel back to the operator it represents.
    pub fn to_operator(&self) -> RationalOperator {
        let len = self.space.len();
        let mut m = Matrix::zeros(len, len);
        for y in 0..len {
            let inv = self.mover(y).inverse();
            for x in 0..len {
                let v = self.value(self.space.act_index(&inv, x));
                if !v.is_zero() {
                    m.set(x, y, v.clone());
                }
            }
        }
        RationalOperator { space: self.space.clone(), matrix: m }
    }
}

/// Kernel of an equivariant operator relative to the point `base_point`.
pub fn kernel_of(t: &RationalOperator, base_point: usize) -> Result<InvariantKernel> {
    if base_point >= t.space.len() {
        return invalid(format!("base point {base_point} outside the space"));
    }
    if !equivariance_check(t, &sn_generators(t.space.n())) {
        return contract("operator is not S_n-equivariant");
    }
    let mut k = InvariantKernel::skeleton(t.space.clone(), base_point)?;
    for (o, orbit) in k.orbits.clone().iter().enumerate() {
        k.values[o] = t.matrix.get(orbit[0], base_point).clone();
    }
    Ok(k)
}

/// `(Tf)(x) = Σ_y f(y) ψ(σ_y⁻¹ x)`.
pub fn apply_kernel(psi: &InvariantKernel, f: &ModuleVector) -> Result<ModuleVector> {
    if f.space != psi.space {
        return invalid("kernel and vector live on different spaces");
    }
    let len = psi.space.len();
    let mut out = vec![Q::zero(); len];
    for (y, fy) in f.coeffs.iter().enumerate() {
        if fy.is_zero() {
            continue;
        }
        let inv = psi.mover(y).inverse();
        for (x, o) in out.iter_mut().enumerate() {
            let v = psi.value(psi.space.act_index(&inv, x));
            if !v.is_zero() {
                *o += fy * v;
            }
        }
    }
    ModuleVector::new(psi.space.clone(), out)
}

/// Convolution of kernels, ordered so that
/// `convolve(kernel_of(T), kernel_of(S)) = kernel_of(T∘S)`.
///
/// Writing `u_y` for a group element with `u_y x_0 = y`, the result is
/// `x ↦ Σ_y ψ2(y)·ψ1(u_y⁻¹ x)`. This is the group convolution `ψ2 * ψ1`
/// with the `1/|K|` normalization absorbed by summing over the space rather
/// than over the group.
pub fn convolve(psi1: &InvariantKernel, psi2: &InvariantKernel) -> Result<InvariantKernel> {
    if psi1.space != psi2.space || psi1.base != psi2.base {
        return invalid("kernels must share their space and base point");
    }
    let mut out = psi1.clone();
    for (o, orbit) in psi1.orbits.iter().enumerate() {
        let x = orbit[0];
        let mut s = Q::zero();
        for y in 0..psi1.space.len() {
            let b = psi2.value(y);
            if b.is_zero() {
                continue;
            }
            let a = psi1.value(psi1.space.act_index(&psi1.mover(y).inverse(), x));
            if !a.is_zero() {
                s += b * a;
            }
        }
        out.values[o] = s;
    }
    Ok(out)
}

/// Number of orbits of the group generated by `stabilizer_generators`.
pub fn wielandt_count(stabilizer_generators: &[Permutation], space: &OmegaIndex) -> Result<usize> {
    Ok(subgroup_orbits(stabilizer_generators, space)?.len())
}

/// Multiplicity of `S^λ` in `M^a`: the average of `χ_λ` over the Young
/// subgroup, summed class by class.
pub fn multiplicity(lambda: &Partition, a: &Composition) -> Result<u64> {
    if lambda.n() != a.n() {
        return invalid(format!("|λ| = {} but |a| = {}", lambda.n(), a.n()));
    }
    let mut total = Q::zero();
    let mut types: Vec<usize> = Vec::new();
    young_class_sum(a.parts(), 0, &mut types, Q::one(), lambda, &mut total)?;
    if !total.is_integer() || total < Q::zero() {
        return contract(format!("multiplicity {total} is not a nonnegative integer"));
    }
    Ok(total.to_integer().try_into().unwrap_or(u64::MAX))
}

fn young_class_sum(
    parts: &[usize],
    idx: usize,
    cycles: &mut Vec<usize>,
    weight: Q,
    lambda: &Partition,
    total: &mut Q,
) -> Result<()> {
    if idx == parts.len() {
        let mut ct = cycles.clone();
        ct.sort_unstable_by(|a, b| b.cmp(a));
        let chi = sn_character(lambda, &Partition::new(&ct)?)?;
        *total += weight * q(chi);
        return Ok(());
    }
    for mu in Partition::all(parts[idx]) {
        let before = cycles.len();
        cycles.extend_from_slice(mu.parts());
        let w = &weight / Q::from_integer(BigInt::from(mu.z()));
        young_class_sum(parts, idx + 1, cycles, w, lambda, total)?;
        cycles.truncate(before);
    }
    Ok(())
}

/// The orthogonal projection of `M^a` onto its `S^λ`-isotypic component,
/// `E = (d_λ/n!) Σ_g χ_λ(g) P(g)`.
pub fn isotypic_projector(lambda: &Partition, a: &Composition) -> Result<RationalOperator> {
    let space = Arc::new(enumerate_omega(a)?);
    isotypic_projector_on(lambda, space)
}

pub fn isotypic_projector_on(lambda: &Partition, space: Arc<OmegaIndex>) -> Result<RationalOperator> {
    let n = space.n();
    if lambda.n() != n {
        return invalid(format!("|λ| = {} but the space has degree {n}", lambda.n()));
    }
    let len = space.len();
    // First column: (d/n!) Σ_{g : g·A* = x} χ(g), accumulated as integers.
    let mut col = vec![0i64; len];
    let mut chars: HashMap<Partition, i64> = HashMap::new();
    for g in all_permutations(n)? {
        let ct = g.cycle_type();
        let chi = match chars.get(&ct) {
            Some(&c) => c,
            None => {
                let c = sn_character(lambda, &ct)?;
                chars.insert(ct, c);
                c
            }
        };
        col[space.act_index(&g, 0)] += chi;
    }
    let scale = Q::new(BigInt::from(hook_dimension(lambda)), BigInt::from(factorial(n)));
    let col: Vec<Q> = col.into_iter().map(|c| q(c) * &scale).collect();
    let mut m = Matrix::zeros(len, len);
    for y in 0..len {
        let inv = space.coset_rep(y).inverse();
        for x in 0..len {
            let v = &col[space.act_index(&inv, x)];
            if !v.is_zero() {
                m.set(x, y, v.clone());
            }
        }
    }
    Ok(RationalOperator { space, matrix: m })
}

/// One row of a [`MultiplicityTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityRow {
    pub label: String,
    pub multiplicity: u64,
    pub dimension: u64,
}

/// Irreducible constituents with multiplicities and dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub rows: Vec<MultiplicityRow>,
}

impl MultiplicityTable {
    pub fn push(&mut self, label: impl Into<String>, multiplicity: u64, dimension: u64) {
        self.rows.push(MultiplicityRow { label: label.into(), multiplicity, dimension });
    }

    /// `Σ m²`, the Wielandt side of the audit.
    pub fn sum_sq(&self) -> u128 {
        self.rows.iter().map(|r| (r.multiplicity as u128).pow(2)).sum()
    }

    /// `Σ m·dim`, the dimension of the ambient space.
    pub fn total_dimension(&self) -> u128 {
        self.rows.iter().map(|r| r.multiplicity as u128 * r.dimension as u128).sum()
    }

    pub fn nonzero_rows(&self) -> impl Iterator<Item = &MultiplicityRow> {
        self.rows.iter().filter(|r| r.multiplicity > 0)
    }

    /// Checks the dimension audit against an expected total.
    pub fn audit_dimension(&self, expected: u128) -> Result<()> {
        let got = self.total_dimension();
        if got != expected {
            return Err(Error::ContractViolation(format!(
                "Σ m·dim = {got} but the space has dimension {expected} (residual {})",
                expected as i128 - got as i128
            )));
        }
        Ok(())
    }
}

/// Isotypic decomposition of `M^a` by the character formula.
pub fn decompose_module(a: &Composition) -> Result<MultiplicityTable> {
    let mut t = MultiplicityTable::default();
    for lambda in Partition::all(a.n()) {
        let m = multiplicity(&lambda, a)?;
        if m > 0 {
            t.push(lambda.to_string(), m, hook_dimension(&lambda));
        }
    }
    t.audit_dimension(a.multinomial())?;
    Ok(t)
}
