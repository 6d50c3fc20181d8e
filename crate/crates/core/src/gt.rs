//! Gelfand-Tsetlin vectors of `S^{n-1,1}` along the chain of Young
//! subgroups `S_{a_1} ≤ S_{a_1+a_2} ≤ …`, their spherical functions and
//! the associated projectors in `M^a`.

use crate::algebra::{ModuleVector, RationalOperator};
use crate::error::{invalid, Result};
use crate::linalg::{q, Matrix, Q};
use crate::symmetric::{
    all_permutations, enumerate_omega, hook_dimension, sn_character, Composition, OmegaIndex, OrderedSetPartition,
    Partition, Permutation,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The chain of Young subgroups defined by a composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub composition: Composition,
}

impl ChainSpec {
    pub fn new(composition: Composition) -> Self {
        ChainSpec { composition }
    }

    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        Ok(ChainSpec { composition: Composition::new(parts)? })
    }

    fn a(&self, j: usize) -> usize {
        self.composition.parts()[j - 1]
    }

    /// `h(j) = a_1 + … + a_{j-1}`.
    pub fn h(&self, j: usize) -> usize {
        self.composition.parts()[..j - 1].iter().sum()
    }

    fn check_j(&self, j: usize) -> Result<()> {
        let m = self.composition.len();
        if m < 2 {
            return invalid("a chain of length 1 has no nontrivial vectors");
        }
        if j < 2 || j > m {
            return invalid(format!("j = {j} outside 2..{m}"));
        }
        Ok(())
    }
}

/// A vector `raw/√norm_sq` kept in exact form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVector {
    pub raw: Vec<Q>,
    pub norm_sq: Q,
}

impl ScaledVector {
    pub fn new(raw: Vec<Q>) -> Self {
        let norm_sq = crate::linalg::dot(&raw, &raw);
        ScaledVector { raw, norm_sq }
    }

    /// `⟨u, v⟩²` together with its sign, which is all that can be said
    /// exactly about the inner product of two unit vectors.
    pub fn inner_sq_signed(&self, other: &ScaledVector) -> Q {
        let d = crate::linalg::dot(&self.raw, &other.raw);
        let sq = &d * &d / (&self.norm_sq * &other.norm_sq);
        if d < Q::zero() {
            -sq
        } else {
            sq
        }
    }
}

/// Intersection numbers of a point with the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StratumKey {
    pub s: usize,
    pub u: usize,
    pub v: usize,
    pub z: usize,
}

/// `v_j` for `j = 2..m`, as vectors on `{1..n}` proportional to
/// `a_j·1_{A_1∪…∪A_{j-1}} − h(j)·1_{A_j}`.
pub fn gt_vectors(chain: &ChainSpec) -> Result<Vec<ScaledVector>> {
    let m = chain.composition.len();
    if m < 2 {
        return invalid("a chain of length 1 has no nontrivial vectors");
    }
    let n = chain.composition.n();
    let mut out = Vec::with_capacity(m - 1);
    for j in 2..=m {
        let (aj, h) = (chain.a(j) as i64, chain.h(j));
        let mut raw = vec![Q::zero(); n];
        for r in raw.iter_mut().take(h) {
            *r = q(aj);
        }
        for r in raw.iter_mut().skip(h).take(aj as usize) {
            *r = q(-(h as i64));
        }
        out.push(ScaledVector::new(raw));
    }
    Ok(out)
}

fn stratum_words(_chain: &ChainSpec, j: usize, wa: &[u8], wb: &[u8]) -> StratumKey {
    let jb = (j - 1) as u8;
    let (mut s, mut u, mut v, mut z) = (0, 0, 0, 0);
    for (&x, &y) in wa.iter().zip(wb) {
        match (x < jb, y < jb, x == jb, y == jb) {
            (true, true, _, _) => s += 1,
            (true, _, _, true) => u += 1,
            (_, true, true, _) => v += 1,
            (_, _, true, true) => z += 1,
            _ => {}
        }
    }
    StratumKey { s, u, v, z }
}

/// Stratum of `B` relative to the base point.
pub fn stratum_of(chain: &ChainSpec, j: usize, b: &OrderedSetPartition) -> Result<StratumKey> {
    chain.check_j(j)?;
    if b.type_of() != chain.composition {
        return invalid(format!("point of type {} on a chain of type {}", b.type_of(), chain.composition));
    }
    let base = base_word(&chain.composition);
    Ok(stratum_words(chain, j, &base, &b.word()))
}

fn base_word(a: &Composition) -> Vec<u8> {
    a.parts().iter().enumerate().flat_map(|(b, &p)| std::iter::repeat_n(b as u8, p)).collect()
}

/// The value of the spherical function on a stratum.
pub fn phi_value(chain: &ChainSpec, j: usize, key: StratumKey) -> Q {
    let aj = chain.a(j) as i64;
    let h = chain.h(j) as i64;
    let num = key.s as i64 * aj * aj - aj * h * (key.u + key.v) as i64 + key.z as i64 * h * h;
    Q::new(BigInt::from(num), BigInt::from(aj * h * (h + aj)))
}

/// Spherical function of `v_j` as a table over the strata that occur.
pub fn spherical_phi_table(chain: &ChainSpec, j: usize) -> Result<BTreeMap<StratumKey, Q>> {
    chain.check_j(j)?;
    let space = enumerate_omega(&chain.composition)?;
    let base = space.word(0).to_vec();
    let mut out = BTreeMap::new();
    for k in 0..space.len() {
        let key = stratum_words(chain, j, &base, space.word(k));
        out.entry(key).or_insert_with(|| phi_value(chain, j, key));
    }
    Ok(out)
}

/// `B ↦ φ_j(B)` on `Ω_a`.
pub fn spherical_phi(chain: &ChainSpec, j: usize) -> Result<ModuleVector> {
    chain.check_j(j)?;
    let space = Arc::new(enumerate_omega(&chain.composition)?);
    let base = space.word(0).to_vec();
    let coeffs = (0..space.len()).map(|k| phi_value(chain, j, stratum_words(chain, j, &base, space.word(k)))).collect();
    ModuleVector::new(space, coeffs)
}

/// Projector onto the copy of `S^{n-1,1}` generated by `v_j`:
/// `E[B][A] = ((n-1)/|Ω|)·φ_j(σ_B⁻¹A)`.
///
/// The stratum of `σ_B⁻¹A` relative to the base point is the stratum of
/// `A` relative to `B`, so entries are read off from pairs of words.
pub fn gt_projector(chain: &ChainSpec, j: usize) -> Result<RationalOperator> {
    chain.check_j(j)?;
    let space = Arc::new(enumerate_omega(&chain.composition)?);
    gt_projector_on(chain, j, space)
}

pub(crate) fn gt_projector_on(chain: &ChainSpec, j: usize, space: Arc<OmegaIndex>) -> Result<RationalOperator> {
    chain.check_j(j)?;
    let n = chain.composition.n();
    let len = space.len();
    let c = Q::new(BigInt::from(n - 1), BigInt::from(len));
    let mut cache: BTreeMap<StratumKey, Q> = BTreeMap::new();
    let mut m = Matrix::zeros(len, len);
    for r in 0..len {
        for col in 0..len {
            let key = stratum_words(chain, j, space.word(r), space.word(col));
            let v = cache.entry(key).or_insert_with(|| &c * phi_value(chain, j, key));
            if !v.is_zero() {
                m.set(r, col, v.clone());
            }
        }
    }
    RationalOperator::new(space, m)
}

/// Block positions (0-based) of the two singleton blocks read as `(i, j)`.
pub fn pair_blocks(a: &Composition) -> Result<(usize, usize)> {
    let p = a.parts();
    let n = a.n();
    if n < 4 || p.len() != 3 {
        return invalid(format!("{a} is not a pair space with n ≥ 4"));
    }
    if p == [n - 2, 1, 1] {
        Ok((1, 2))
    } else if p == [1, 1, n - 2] {
        Ok((0, 1))
    } else {
        invalid(format!("{a} is neither (n-2,1,1) nor (1,1,n-2)"))
    }
}

/// The ordered pair `(i, j)` (1-based) of point `k`.
pub fn pair_of(space: &OmegaIndex, k: usize) -> Result<(usize, usize)> {
    let (bi, bj) = pair_blocks(space.composition())?;
    let w = space.word(k);
    let i = w.iter().position(|&b| b as usize == bi).expect("nonempty block") + 1;
    let j = w.iter().position(|&b| b as usize == bj).expect("nonempty block") + 1;
    Ok((i, j))
}

/// Index of the point with ordered pair `(i, j)` (1-based).
pub fn index_of_pair(space: &OmegaIndex, i: usize, j: usize) -> Result<usize> {
    let (bi, bj) = pair_blocks(space.composition())?;
    let n = space.n();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return invalid(format!("({i},{j}) is not a pair of distinct points of 1..{n}"));
    }
    let rest = 3 - bi - bj;
    let mut w = vec![rest as u8; n];
    w[i - 1] = bi as u8;
    w[j - 1] = bj as u8;
    Ok(space.index_of_word(&w).expect("pair word"))
}

/// The closed form of the second projector on pairs:
/// `(E f)(i,j) = ((n-1)/(n-2))·f̄(i) + (1/(n-2))·f̄(j)` with
/// `f̄(t) = (1/n)Σ_k f(t,k) + (1/(n(n-1)))Σ_h f(h,t) − (1/(n(n-1)))Σ f`.
pub fn e12_fast(f: &ModuleVector) -> Result<ModuleVector> {
    let space = &f.space;
    pair_blocks(space.composition())?;
    let n = space.n();
    let mut row = vec![Q::zero(); n + 1];
    let mut col = vec![Q::zero(); n + 1];
    let mut total = Q::zero();
    for (k, v) in f.coeffs.iter().enumerate() {
        let (i, j) = pair_of(space, k)?;
        row[i] += v;
        col[j] += v;
        total += v;
    }
    let ni = n as i64;
    let fbar: Vec<Q> = (0..=n).map(|t| &row[t] / q(ni) + (&col[t] - &total) / q(ni * (ni - 1))).collect();
    let mut out = vec![Q::zero(); space.len()];
    for (k, o) in out.iter_mut().enumerate() {
        let (i, j) = pair_of(space, k)?;
        *o = (&fbar[i] * q(ni - 1) + &fbar[j]) / q(ni - 2);
    }
    ModuleVector::new(f.space.clone(), out)
}

/// Shape `(n−k, 1^k)`, or `(1^n)` when `k = n`.
pub fn hook_composition(n: usize, k: usize) -> Result<Composition> {
    if k == 0 || k > n {
        return invalid(format!("k = {k} outside 1..{n}"));
    }
    let mut parts = Vec::with_capacity(k + 1);
    if k < n {
        parts.push(n - k);
    }
    parts.extend(std::iter::repeat_n(1, k));
    Composition::new(&parts)
}

/// `(Ẽ^λ f)(i_1,…,i_k) = (d_λ/k!) Σ_σ χ_λ(σ) f(i_{σ⁻¹(1)},…,i_{σ⁻¹(k)})` on
/// `Ω_{(n−k,1^k)}`, the tuple being read from the last `k` blocks.
pub fn symmetrize(lambda: &Partition, f: &ModuleVector) -> Result<ModuleVector> {
    let space = &f.space;
    let k = lambda.n();
    let n = space.n();
    if hook_composition(n, k)? != *space.composition() {
        return invalid(format!("λ ⊢ {k} does not match the space {}", space.composition()));
    }
    let first = space.composition().len() - k;
    let sigmas = all_permutations(k)?;
    let weights: Vec<(Permutation, Q)> = sigmas
        .into_iter()
        .map(|s| {
            let chi = sn_character(lambda, &s.cycle_type())?;
            Ok((s, q(chi)))
        })
        .collect::<Result<_>>()?;
    let scale = Q::new(BigInt::from(hook_dimension(lambda)), BigInt::from(crate::symmetric::factorial(k)));
    let mut out = vec![Q::zero(); space.len()];
    for (x, o) in out.iter_mut().enumerate() {
        let w = space.word(x);
        let mut tuple = vec![0usize; k];
        for (p, &b) in w.iter().enumerate() {
            if b as usize >= first {
                tuple[b as usize - first] = p;
            }
        }
        let mut acc = Q::zero();
        for (s, chi) in &weights {
            if chi.is_zero() {
                continue;
            }
            let inv = s.inverse();
            let mut nw = w.to_vec();
            for r in 0..k {
                nw[tuple[inv.image(r + 1) - 1]] = (first + r) as u8;
            }
            let y = space.index_of_word(&nw).expect("same type");
            acc += chi * &f.coeffs[y];
        }
        *o = acc * &scale;
    }
    ModuleVector::new(f.space.clone(), out)
}

/// [`symmetrize`] as an operator on `Ω_{(n−k,1^k)}`.
pub fn symmetrize_projector(lambda: &Partition, n: usize) -> Result<RationalOperator> {
    let space = Arc::new(enumerate_omega(&hook_composition(n, lambda.n())?)?);
    let cols = (0..space.len())
        .map(|y| Ok(symmetrize(lambda, &ModuleVector::delta(space.clone(), y))?.coeffs))
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(space.len(), &cols);
    RationalOperator::new(space, m)
}
