//! Orbits of `S_n` on `Ω_a × Ω_b` as nonnegative integer matrices with
//! prescribed margins, the operators `𝒯_M` they index, and the
//! semistandard subfamily that restricts to a basis of `Hom(S^λ, M^μ)`.

use crate::algebra::{isotypic_projector_on, Intertwiner, PaddedSpace};
use crate::error::{invalid, Result};
use crate::linalg::{Matrix, Q};
use crate::symmetric::{Composition, OrderedSetPartition, Partition};
use num_traits::One;
use std::fmt;
use std::sync::Arc;

/// An `h × k` matrix with row sums `a` and column sums `b`.
///
/// Rows follow the domain composition and columns the codomain, so
/// `m_{ij} = |A_i ∩ B_j|` for a pair `(A, B)` in the orbit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransportMatrix {
    entries: Vec<Vec<usize>>,
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
}

impl fmt::Debug for TransportMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

impl TransportMatrix {
    /// Builds a matrix and reads its margins off the entries.
    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self> {
        let k = entries.first().map_or(0, |r| r.len());
        if entries.is_empty() || k == 0 || entries.iter().any(|r| r.len() != k) {
            return invalid("transport matrix must be a nonempty rectangle");
        }
        let row_sums = entries.iter().map(|r| r.iter().sum()).collect();
        let col_sums = (0..k).map(|c| entries.iter().map(|r| r[c]).sum()).collect();
        Ok(TransportMatrix { entries, row_sums, col_sums })
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.col_sums
    }

    pub fn transpose(&self) -> TransportMatrix {
        let k = self.col_sums.len();
        let entries = (0..k).map(|c| self.entries.iter().map(|r| r[c]).collect()).collect();
        TransportMatrix { entries, row_sums: self.col_sums.clone(), col_sums: self.row_sums.clone() }
    }
}

/// Every matrix with row sums `a` and column sums `b`, in lexicographic
/// order of the row-major entries.
pub fn transport_matrices(a: &Composition, b: &Composition) -> Result<Vec<TransportMatrix>> {
    transport_matrices_padded(a.parts(), b.parts())
}

pub(crate) fn transport_matrices_padded(a: &[usize], b: &[usize]) -> Result<Vec<TransportMatrix>> {
    if a.iter().sum::<usize>() != b.iter().sum::<usize>() {
        return invalid(format!("margins {a:?} and {b:?} have different totals"));
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(a.len());
    let mut remaining = b.to_vec();
    fill_rows(a, &mut remaining, &mut rows, &mut out);
    Ok(out)
}

fn fill_rows(a: &[usize], remaining: &mut Vec<usize>, rows: &mut Vec<Vec<usize>>, out: &mut Vec<TransportMatrix>) {
    let i = rows.len();
    if i == a.len() {
        if remaining.iter().all(|&r| r == 0) {
            out.push(TransportMatrix {
                entries: rows.clone(),
                row_sums: a.to_vec(),
                col_sums: col_sums(rows, remaining.len()),
            });
        }
        return;
    }
    let mut row = vec![0; remaining.len()];
    fill_entries(a, a[i], 0, &mut row, remaining, rows, out);
}

fn col_sums(rows: &[Vec<usize>], k: usize) -> Vec<usize> {
    (0..k).map(|c| rows.iter().map(|r| r[c]).sum()).collect()
}

fn fill_entries(
    a: &[usize],
    left: usize,
    j: usize,
    row: &mut Vec<usize>,
    remaining: &mut Vec<usize>,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<TransportMatrix>,
) {
    let k = row.len();
    if j == k - 1 {
        if left <= remaining[j] {
            row[j] = left;
            remaining[j] -= left;
            rows.push(row.clone());
            fill_rows(a, remaining, rows, out);
            rows.pop();
            remaining[j] += left;
            row[j] = 0;
        }
        return;
    }
    for x in 0..=left.min(remaining[j]) {
        row[j] = x;
        remaining[j] -= x;
        fill_entries(a, left - x, j + 1, row, remaining, rows, out);
        remaining[j] += x;
    }
    row[j] = 0;
}

/// `m(A, B)` with `m_{ij} = |A_i ∩ B_j|`.
pub fn matrix_of_pair(a: &OrderedSetPartition, b: &OrderedSetPartition) -> Result<TransportMatrix> {
    if a.n() != b.n() {
        return invalid(format!("points of degrees {} and {}", a.n(), b.n()));
    }
    let entries = a
        .blocks()
        .iter()
        .map(|ai| b.blocks().iter().map(|bj| ai.iter().filter(|x| bj.contains(x)).count()).collect())
        .collect();
    TransportMatrix::new(entries)
}

fn matrix_of_words(wa: &[u8], wb: &[u8], h: usize, k: usize) -> Vec<usize> {
    let mut m = vec![0; h * k];
    for (&x, &y) in wa.iter().zip(wb) {
        m[x as usize * k + y as usize] += 1;
    }
    m
}

/// All pairs `(A, B)` with `m(A, B) = M`.
pub fn pairs_in_orbit(m: &TransportMatrix) -> Result<Vec<(OrderedSetPartition, OrderedSetPartition)>> {
    let dom = PaddedSpace::new(m.row_sums())?;
    let cod = PaddedSpace::new(m.col_sums())?;
    let (h, k) = (m.row_sums.len(), m.col_sums.len());
    let target: Vec<usize> = m.entries.iter().flatten().copied().collect();
    let mut out = Vec::new();
    for x in 0..dom.omega.len() {
        let wa = dom.padded_word(x);
        for y in 0..cod.omega.len() {
            let wb = cod.padded_word(y);
            if matrix_of_words(&wa, &wb, h, k) == target {
                out.push((OrderedSetPartition::from_word(&wa, h), OrderedSetPartition::from_word(&wb, k)));
            }
        }
    }
    Ok(out)
}

/// `(𝒯_M f)(B) = Σ_{A : m(A,B) = M} f(A)`.
pub fn t_op(m: &TransportMatrix) -> Result<Intertwiner> {
    let entries: Vec<Vec<i64>> = m.entries.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    t_op_padded(&entries, m.row_sums(), m.col_sums())
}

/// [`t_op`] for margins that may contain zeros. A matrix with a negative
/// entry, or with margins other than `a` and `b`, indexes no orbit and
/// gives the zero operator.
pub fn t_op_padded(entries: &[Vec<i64>], a: &[usize], b: &[usize]) -> Result<Intertwiner> {
    let dom = PaddedSpace::new(a)?;
    let cod = PaddedSpace::new(b)?;
    let (h, k) = (a.len(), b.len());
    if entries.len() != h || entries.iter().any(|r| r.len() != k) {
        return invalid(format!("matrix shape does not match margins of lengths {h} and {k}"));
    }
    let mut out = Intertwiner::zero(dom.omega.clone(), cod.omega.clone());
    if entries.iter().flatten().any(|&x| x < 0) {
        return Ok(out);
    }
    let target: Vec<usize> = entries.iter().flatten().map(|&x| x as usize).collect();
    let cod_words: Vec<Vec<u8>> = (0..cod.omega.len()).map(|y| cod.padded_word(y)).collect();
    let one = Q::one();
    for x in 0..dom.omega.len() {
        let wa = dom.padded_word(x);
        for (y, wb) in cod_words.iter().enumerate() {
            if matrix_of_words(&wa, wb, h, k) == target {
                out.matrix.set(y, x, one.clone());
            }
        }
    }
    Ok(out)
}

/// The generalized tableau of shape `row_sums` whose row `r` holds
/// `M[r][v]` copies of `v+1`, in weakly increasing order.
pub fn tableau_of(m: &TransportMatrix) -> Vec<Vec<usize>> {
    m.entries
        .iter()
        .map(|row| row.iter().enumerate().flat_map(|(v, &c)| std::iter::repeat_n(v + 1, c)).collect())
        .collect()
}

/// Whether `M ∈ 𝔐_{λ,μ}` and its tableau has strictly increasing columns.
pub fn is_semistandard(m: &TransportMatrix, lambda: &Partition, mu: &Composition) -> bool {
    let rows = m.row_sums();
    if rows.len() < lambda.len()
        || rows[..lambda.len()] != *lambda.parts()
        || rows[lambda.len()..].iter().any(|&r| r != 0)
    {
        return false;
    }
    if m.col_sums() != mu.parts() {
        return false;
    }
    let t = tableau_of(m);
    t.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| lo > hi))
}

/// The semistandard matrices of shape `λ` and content `μ`.
pub fn semistandard_matrices(lambda: &Partition, mu: &Composition) -> Result<Vec<TransportMatrix>> {
    if lambda.n() != mu.n() {
        return invalid(format!("|λ| = {} but |μ| = {}", lambda.n(), mu.n()));
    }
    Ok(transport_matrices_padded(lambda.parts(), mu.parts())?
        .into_iter()
        .filter(|m| is_semistandard(m, lambda, mu))
        .collect())
}

/// Number of semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka(lambda: &Partition, mu: &Composition) -> Result<usize> {
    Ok(semistandard_matrices(lambda, mu)?.len())
}

/// `𝒯_M ∘ E_λ` for every semistandard `M`, where `E_λ` is the isotypic
/// projector of `M^λ`; these span `Hom(S^λ, M^μ)`.
pub fn hom_basis(lambda: &Partition, mu: &Composition) -> Result<Vec<(TransportMatrix, Intertwiner)>> {
    let ms = semistandard_matrices(lambda, mu)?;
    if ms.is_empty() {
        return Ok(Vec::new());
    }
    let dom = Arc::new(crate::symmetric::enumerate_omega(&lambda.to_composition()?)?);
    let e = isotypic_projector_on(lambda, dom)?;
    let proj = Intertwiner { domain: e.space.clone(), codomain: e.space.clone(), matrix: e.matrix };
    ms.into_iter().map(|m| Ok((m.clone(), t_op(&m)?.after(&proj)))).collect()
}

/// Rank of a family of intertwiners with a common domain and codomain.
pub fn family_rank(ops: &[Intertwiner]) -> usize {
    let vecs: Vec<Vec<Q>> = ops.iter().map(|t| t.matrix.entries().to_vec()).collect();
    crate::linalg::rank_of_vectors(&vecs)
}

/// Stacks the columns of the operators of a family into one matrix.
pub fn stacked(ops: &[Intertwiner]) -> Matrix {
    let rows = ops.first().map_or(0, |t| t.matrix.rows());
    let cols: Vec<Vec<Q>> = ops.iter().flat_map(|t| (0..t.matrix.cols()).map(|c| t.matrix.column(c))).collect();
    Matrix::from_columns(rows, &cols)
}
