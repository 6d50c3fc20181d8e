//! Three-block modules `M^{a,b,c}`: the operators `𝒥_l` and `R_k` built
//! from the matrices `M_l`, the spectrum of the swap Laplacian `Δ_{1,2}`,
//! and spectra of sums of swap Laplacians over a chosen set of block pairs.

use crate::algebra::{d_op_padded, isotypic_projector_on, laplace_matrix, Intertwiner, PaddedSpace};
use crate::error::{contract, invalid, Error, Result};
use crate::linalg::{q, Matrix, Q};
use crate::semistandard::t_op_padded;
use crate::symmetric::{binomial, hook_dimension, Partition};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;

/// A target shape `(α,β,γ)`, a source composition `(a,b,c)` and a level `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GTBlockSpec {
    pub target: [usize; 3],
    pub source: [usize; 3],
    pub k: usize,
}

impl GTBlockSpec {
    pub fn new(target: [usize; 3], source: [usize; 3], k: usize) -> Result<Self> {
        let (lo, hi) = admissible_range(target, source)?;
        if (k as i64) < lo || (k as i64) > hi {
            return invalid(format!("k = {k} outside the admissible range {lo}..={hi}"));
        }
        Ok(GTBlockSpec { target, source, k })
    }
}

fn check_shapes(target: [usize; 3], source: [usize; 3]) -> Result<()> {
    let [al, be, ga] = target;
    if al < be || be < ga {
        return invalid(format!("target {target:?} is not a partition"));
    }
    if target.iter().sum::<usize>() != source.iter().sum::<usize>() {
        return invalid(format!("target {target:?} and source {source:?} have different sizes"));
    }
    if source[0] == 0 {
        return invalid("the first source block must be nonempty");
    }
    Ok(())
}

/// `max{0, b−a, β−a, b−β} ..= min{b−γ, α−a}` as signed bounds; empty when
/// `lo > hi`.
pub fn admissible_range(target: [usize; 3], source: [usize; 3]) -> Result<(i64, i64)> {
    check_shapes(target, source)?;
    let [al, be, ga] = target.map(|x| x as i64);
    let [a, b, _] = source.map(|x| x as i64);
    let lo = 0.max(b - a).max(be - a).max(b - be);
    let hi = (b - ga).min(al - a);
    Ok((lo, hi))
}

fn in_range(l: i64, target: [usize; 3], source: [usize; 3]) -> Result<()> {
    let (lo, hi) = admissible_range(target, source)?;
    if l < lo || l > hi {
        return invalid(format!("l = {l} outside the admissible range {lo}..={hi}"));
    }
    Ok(())
}

/// `M_l`, with rows indexed by the target blocks.
pub fn m_l(l: i64, target: [usize; 3], source: [usize; 3]) -> Vec<Vec<i64>> {
    let [al, be, ga] = target.map(|x| x as i64);
    let [a, b, _] = source.map(|x| x as i64);
    vec![vec![a, l, al - a - l], vec![0, b - l, be - b + l], vec![0, 0, ga]]
}

/// `M_l′`, also a matrix with margins `(α,β,γ)` and `(a,b,c)`.
pub fn m_l_prime(l: i64, target: [usize; 3], source: [usize; 3]) -> Vec<Vec<i64>> {
    let [al, be, ga] = target.map(|x| x as i64);
    let [a, b, _] = source.map(|x| x as i64);
    vec![vec![a - 1, l, al - a - l + 1], vec![1, b - l, be - b + l - 1], vec![0, 0, ga]]
}

/// `M_l″`, with row sums `(α+1, β−1, γ)`.
pub fn m_l_double_prime(l: i64, target: [usize; 3], source: [usize; 3]) -> Vec<Vec<i64>> {
    let [al, be, ga] = target.map(|x| x as i64);
    let [a, b, _] = source.map(|x| x as i64);
    vec![vec![a, l, al - a - l + 1], vec![0, b - l, be - b + l - 1], vec![0, 0, ga]]
}

/// `𝒯_l : M^{α,β,γ} → M^{a,b,c}`.
pub fn t_l(l: i64, target: [usize; 3], source: [usize; 3]) -> Result<Intertwiner> {
    check_shapes(target, source)?;
    t_op_padded(&m_l(l, target, source), &target, &source)
}

/// `𝒯_l′ : M^{α,β,γ} → M^{a,b,c}`.
pub fn t_l_prime(l: i64, target: [usize; 3], source: [usize; 3]) -> Result<Intertwiner> {
    check_shapes(target, source)?;
    t_op_padded(&m_l_prime(l, target, source), &target, &source)
}

/// `𝒯_l″ : M^{α+1,β−1,γ} → M^{a,b,c}`.
pub fn t_l_double_prime(l: i64, target: [usize; 3], source: [usize; 3]) -> Result<Intertwiner> {
    check_shapes(target, source)?;
    if target[1] == 0 {
        return invalid("𝒯_l″ needs β ≥ 1");
    }
    let dom = [target[0] + 1, target[1] - 1, target[2]];
    t_op_padded(&m_l_double_prime(l, target, source), &dom, &source)
}

/// `d_{1,2} : M^{α,β,γ} → M^{α+1,β−1,γ}`.
pub fn d12_on(target: [usize; 3]) -> Result<Intertwiner> {
    d_op_padded(1, 2, &target)
}

/// `Δ_{i,j}` on `M^{parts}` (1-based block indices; zero parts allowed).
pub fn laplace_on(i: usize, j: usize, parts: &[usize]) -> Result<Matrix> {
    if i == 0 || j == 0 || i > parts.len() || j > parts.len() || i == j {
        return invalid(format!("block indices ({i},{j}) out of range"));
    }
    Ok(laplace_matrix(i, j, &PaddedSpace::new(parts)?))
}

fn target_partition(target: [usize; 3]) -> Result<Partition> {
    Partition::new(&target)
}

/// The isotypic projector of `S^{α,β,γ}` inside `M^{α,β,γ}`, as an intertwiner.
pub fn target_projector(target: [usize; 3]) -> Result<Intertwiner> {
    let sp = PaddedSpace::new(&target)?;
    let e = isotypic_projector_on(&target_partition(target)?, sp.omega)?;
    Ok(Intertwiner { domain: e.space.clone(), codomain: e.space.clone(), matrix: e.matrix })
}

/// `𝒥_l`, realized as `𝒯_l ∘ E` with `E` the `S^{α,β,γ}`-isotypic
/// projector of the source.
pub fn j_op(l: i64, target: [usize; 3], source: [usize; 3]) -> Result<Intertwiner> {
    in_range(l, target, source)?;
    Ok(t_l(l, target, source)?.after(&target_projector(target)?))
}

/// `(x)_m = x(x+1)⋯(x+m−1)`.
pub fn pochhammer(x: i64, m: i64) -> BigInt {
    (0..m).fold(BigInt::from(1), |acc, i| acc * BigInt::from(x + i))
}

/// Coefficients `(l, C(l,k)(β−b+k+1)_{l−k}/(a−b+2k+2)_{l−k})` of `R_k`.
pub fn r_coefficients(k: i64, target: [usize; 3], source: [usize; 3]) -> Result<Vec<(i64, Q)>> {
    in_range(k, target, source)?;
    let (_, hi) = admissible_range(target, source)?;
    let be = target[1] as i64;
    let [a, b, _] = source.map(|x| x as i64);
    (k..=hi)
        .map(|l| {
            let den = pochhammer(a - b + 2 * k + 2, l - k);
            if den.is_zero() {
                return Err(Error::Arithmetic(format!("(a−b+2k+2)_{{l−k}} vanishes for a={a}, b={b}, k={k}, l={l}")));
            }
            let num = BigInt::from(binomial(l, k)) * pochhammer(be - b + k + 1, l - k);
            Ok((l, Q::new(num, den)))
        })
        .collect()
}

/// `R_k = Σ_l C(l,k)·(β−b+k+1)_{l−k}/(a−b+2k+2)_{l−k}·𝒥_l`.
pub fn r_op(k: i64, target: [usize; 3], source: [usize; 3]) -> Result<Intertwiner> {
    let coeffs = r_coefficients(k, target, source)?;
    let e = target_projector(target)?;
    let mut acc: Option<Intertwiner> = None;
    for (l, c) in coeffs {
        let term = t_l(l, target, source)?.scale(&c);
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    Ok(acc.expect("nonempty range").after(&e))
}

/// `ab − (b−k)(a+k+1)`, the `Δ_{1,2}`-eigenvalue on the `k`-th block.
pub fn delta12_eigenvalue(a: usize, b: usize, k: usize) -> Result<i64> {
    let (ai, bi, ki) = (a as i64, b as i64, k as i64);
    if ki < 0.max(bi - ai) || ki > bi {
        return invalid(format!("k = {k} outside {}..={b}", 0.max(bi - ai)));
    }
    Ok(ai * bi - (bi - ki) * (ai + ki + 1))
}

/// `Σ_{i<j} Δ_{i,j}` on `S^λ ⊂ M^a`: the content of `λ` minus `Σ C(a_i, 2)`.
pub fn total_laplacian_eigenvalue(lambda: &Partition, a: &[usize]) -> i64 {
    let content: i64 =
        lambda.parts().iter().enumerate().map(|(r, &p)| (0..p as i64).map(|c| c - r as i64).sum::<i64>()).sum();
    content - a.iter().map(|&x| (x * x.saturating_sub(1) / 2) as i64).sum::<i64>()
}

/// `½[α²+β²+γ²−2β−4γ−a²−b²−c²] − ak + (k+1)(b−k)`, the eigenvalue of
/// `Δ_{1,3} + Δ_{2,3}` on the copy of `S^{α,β,γ}` at level `k`.
pub fn delta13_23_eigenvalue(target: [usize; 3], source: [usize; 3], k: usize) -> Result<Q> {
    check_shapes(target, source)?;
    let [al, be, ga] = target.map(|x| x as i64);
    let [a, b, c] = source.map(|x| x as i64);
    let ki = k as i64;
    let lo = (be - a).max(b - be);
    let hi = (b - ga).min(al - a);
    if ki < lo || ki > hi {
        return invalid(format!("k = {k} outside the containment range {lo}..={hi}"));
    }
    let bracket = al * al + be * be + ga * ga - 2 * be - 4 * ga - a * a - b * b - c * c;
    Ok(Q::new(BigInt::from(bracket), BigInt::from(2)) - q(a * ki) + q((ki + 1) * (b - ki)))
}

/// Shapes `λ` with at most three rows such that `λ/μ` is a horizontal strip
/// of `c` boxes, `μ` a two-row shape.
pub fn pieri_shapes(mu: [usize; 2], c: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let n = mu[0] + mu[1] + c;
    for g in 0..=c.min(mu[1]) {
        for bb in mu[1]..=mu[0] {
            let add2 = bb - mu[1];
            if add2 + g > c {
                continue;
            }
            let al = mu[0] + (c - add2 - g);
            if al + bb + g == n {
                out.push([al, bb, g]);
            }
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    out
}

/// One eigenspace of `Δ_{1,2}` on `M^{a,b,c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta12Block {
    pub k: usize,
    pub eigenvalue: i64,
    pub dimension: usize,
    /// `(α,β,γ)` with multiplicity one each, and their dimensions.
    pub constituents: Vec<([usize; 3], u64)>,
}

/// Eigenspaces of `Δ_{1,2}` on `M^{a,b,c}`, one per level `k`, with
/// dimensions found by exact elimination.
pub fn mabc_decomposition(a: usize, b: usize, c: usize) -> Result<Vec<Delta12Block>> {
    let parts = [a, b, c];
    let sp = PaddedSpace::new(&parts)?;
    let total = sp.omega.len();
    let lap = laplace_matrix(1, 2, &sp);
    let mut out = Vec::new();
    for k in b.saturating_sub(a)..=b {
        let ev = delta12_eigenvalue(a, b, k)?;
        let dimension = lap.eigenspace_dim(&q(ev));
        let shape = [a + k, b - k];
        let constituents: Vec<([usize; 3], u64)> = pieri_shapes(shape, c)
            .into_iter()
            .map(|t| Ok((t, hook_dimension(&Partition::new(&t)?))))
            .collect::<Result<_>>()?;
        let n = a + b + c;
        let expected = binomial(n as i64, c as i64)
            * (binomial((a + b) as i64, (b - k) as i64) - binomial((a + b) as i64, (b - k) as i64 - 1));
        let from_shapes: u128 = constituents.iter().map(|(_, d)| *d as u128).sum();
        if dimension as u128 != expected || from_shapes != expected {
            return contract(format!(
                "level k={k}: eigenspace dimension {dimension}, induced dimension {expected}, constituents {from_shapes}"
            ));
        }
        out.push(Delta12Block { k, eigenvalue: ev, dimension, constituents });
    }
    let sum: usize = out.iter().map(|b| b.dimension).sum();
    if sum != total {
        return contract(format!("eigenspaces cover {sum} of {total} dimensions"));
    }
    Ok(out)
}

/// Candidate eigenvalues for a sum of swap Laplacians.
fn candidates(parts: [usize; 3], pairs: &[(usize, usize)]) -> BTreeSet<i64> {
    let n: usize = parts.iter().sum();
    let shapes: Vec<Partition> = Partition::all(n).into_iter().filter(|p| p.len() <= 3).collect();
    let level = |p: usize, r: usize| -> Vec<i64> {
        let (x, y) = (parts[p] as i64, parts[r] as i64);
        (0.max(y - x)..=y).map(|k| x * y - (y - k) * (x + k + 1)).collect()
    };
    let mut out = BTreeSet::new();
    match pairs.len() {
        1 => {
            let (i, j) = pairs[0];
            out.extend(level(i - 1, j - 1));
        }
        2 => {
            let third = [(1, 2), (1, 3), (2, 3)].into_iter().find(|p| !pairs.contains(p)).expect("one pair missing");
            for lam in &shapes {
                let tot = total_laplacian_eigenvalue(lam, &parts);
                out.extend(level(third.0 - 1, third.1 - 1).into_iter().map(|ev| tot - ev));
            }
        }
        _ => {
            out.extend(shapes.iter().map(|lam| total_laplacian_eigenvalue(lam, &parts)));
        }
    }
    out
}

/// Spectrum of `Σ Δ_{i,j}` over `pairs` on `M^{a,b,c}` as
/// `(eigenvalue, multiplicity)`, ascending.
pub fn urn_spectrum(parts: [usize; 3], pairs: &[(usize, usize)]) -> Result<Vec<(Q, usize)>> {
    if pairs.is_empty() {
        return invalid("at least one pair of urns is required");
    }
    let mut ps: Vec<(usize, usize)> = Vec::new();
    for &(i, j) in pairs {
        let p = (i.min(j), i.max(j));
        if p.0 < 1 || p.1 > 3 || p.0 == p.1 {
            return invalid(format!("({i},{j}) is not a pair of distinct urns in 1..3"));
        }
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    ps.sort_unstable();
    let sp = PaddedSpace::new(&parts)?;
    let total = sp.omega.len();
    let mut op = Matrix::zeros(total, total);
    for &(i, j) in &ps {
        op = op.add(&laplace_matrix(i, j, &sp));
    }
    let mut found: Vec<(i64, usize)> = Vec::new();
    let mut covered = 0;
    for ev in candidates(parts, &ps) {
        let d = op.eigenspace_dim(&q(ev));
        if d > 0 {
            found.push((ev, d));
            covered += d;
        }
    }
    if covered < total {
        let bound = op.max_abs_row_sum();
        let r = bound.ceil().to_integer().to_i64().unwrap_or(i64::MAX);
        for ev in -r..=r {
            if covered == total {
                break;
            }
            if found.iter().any(|f| f.0 == ev) {
                continue;
            }
            let d = op.eigenspace_dim(&q(ev));
            if d > 0 {
                found.push((ev, d));
                covered += d;
            }
        }
    }
    if covered != total {
        return contract(format!("spectrum accounts for {covered} of {total} dimensions"));
    }
    found.sort_unstable();
    Ok(found.into_iter().map(|(ev, d)| (q(ev), d)).collect())
}
