//! Dense exact rational matrices.
//!
//! Products are computed over the integers after clearing denominators,
//! and ranks use fraction-free (Bareiss) elimination, so no intermediate
//! step ever reduces a fraction it does not have to.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn dot(u: &[Q], v: &[Q]) -> Q {
    let mut s = Q::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            s += a * b;
        }
    }
    s
}

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Q) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "shape mismatch in mul_vec");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Matrix product computed over the integers.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let (ai, da) = clear_denominators(&self.data);
        let (bi, db) = clear_denominators(&other.data);
        let den = da * db;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let (Some(a64), Some(b64)) = (small_ints(&ai), small_ints(&bi)) {
            let mut out = vec![0i128; n * m];
            for r in 0..n {
                for t in 0..k {
                    let x = a64[r * k + t];
                    if x == 0 {
                        continue;
                    }
                    let brow = &b64[t * m..(t + 1) * m];
                    let orow = &mut out[r * m..(r + 1) * m];
                    for (o, &y) in orow.iter_mut().zip(brow) {
                        *o += x * y;
                    }
                }
            }
            let data = out.into_iter().map(|v| Q::new(BigInt::from(v), den.clone())).collect();
            return Matrix { rows: n, cols: m, data };
        }
        let mut out = vec![BigInt::zero(); n * m];
        for r in 0..n {
            for t in 0..k {
                let x = &ai[r * k + t];
                if x.is_zero() {
                    continue;
                }
                for c in 0..m {
                    let y = &bi[t * m + c];
                    if !y.is_zero() {
                        out[r * m + c] += x * y;
                    }
                }
            }
        }
        let data = out.into_iter().map(|v| Q::new(v, den.clone())).collect();
        Matrix { rows: n, cols: m, data }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| integer_row(self.row(r))).collect();
        bareiss_rank(rows, self.cols)
    }

    /// Dimension of the null space `{v : self·v = 0}`.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Dimension of `ker(self − λI)` for a square matrix.
    pub fn eigenspace_dim(&self, lambda: &Q) -> usize {
        assert!(self.is_square());
        let mut shifted = self.clone();
        for i in 0..self.rows {
            let v = shifted.get(i, i) - lambda;
            shifted.set(i, i, v);
        }
        shifted.kernel_dim()
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &self.mul(self) == self
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Largest absolute row sum, used to bound the spectrum.
    pub fn max_abs_row_sum(&self) -> Q {
        (0..self.rows).map(|r| self.row(r).iter().fold(Q::zero(), |a, x| a + x.abs())).max().unwrap_or_else(Q::zero)
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    bareiss_rank(vectors.iter().map(|v| integer_row(v)).collect(), cols)
}

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn clear_denominators(data: &[Q]) -> (Vec<BigInt>, BigInt) {
    let l = data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    (data.iter().map(|x| x.numer() * (&l / x.denom())).collect(), l)
}

fn small_ints(v: &[BigInt]) -> Option<Vec<i128>> {
    const LIMIT: i64 = 1 << 40;
    v.iter().map(|x| x.to_i64().filter(|y| y.abs() < LIMIT).map(i128::from)).collect()
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in rank + 1..rows {
            let factor = m[r][c].clone();
            for cc in c..cols {
                let v = (&pivot * &m[r][cc] - &factor * &m[rank][cc]) / &prev;
                m[r][cc] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
