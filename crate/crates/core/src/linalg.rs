//! Dense and sparse exact linear algebra over [`ExactScalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Bound, Index, IndexMut};

use num_traits::Signed;

use crate::scalar::ExactScalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &ExactScalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Kronecker product; index `(i1*r2 + i2, j1*c2 + j2)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            let a = &self[(i / r2, j / c2)];
            if a.is_zero() {
                ExactScalar::zero()
            } else {
                a * &other[(i % r2, j % c2)]
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let (r, pivots) = self.rref();
        let mut free = vec![true; self.cols];
        for &p in &pivots {
            free[p] = false;
        }
        (0..self.cols)
            .filter(|&f| free[f])
            .map(|f| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[f] = ExactScalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = ExactScalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Exact positive-semidefiniteness test for a Hermitian matrix.
    ///
    /// Symmetric Gaussian elimination with diagonal pivoting. A zero pivot
    /// with a nonzero row, or any negative pivot, certifies indefiniteness.
    pub fn hermitian_psd(&self) -> PsdReport {
        if !self.is_hermitian() {
            return PsdReport { positive_semidefinite: false, rank: self.rank() };
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut alive: Vec<usize> = (0..n).collect();
        let mut rank = 0;
        while !alive.is_empty() {
            if alive.iter().any(|&i| a[(i, i)].re.is_negative()) {
                return PsdReport { positive_semidefinite: false, rank: self.rank() };
            }
            let Some(pos) = alive.iter().position(|&i| !a[(i, i)].is_zero()) else {
                let rest_zero = alive.iter().all(|&i| alive.iter().all(|&j| a[(i, j)].is_zero()));
                return PsdReport { positive_semidefinite: rest_zero, rank: if rest_zero { rank } else { self.rank() } };
            };
            let p = alive.swap_remove(pos);
            let d = a[(p, p)].clone();
            for &i in &alive {
                if a[(i, p)].is_zero() {
                    continue;
                }
                let f = &a[(i, p)] / &d;
                for &j in &alive {
                    if !a[(p, j)].is_zero() {
                        let s = &f * &a[(p, j)];
                        a[(i, j)] -= &s;
                    }
                }
            }
            rank += 1;
        }
        PsdReport { positive_semidefinite: true, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsdReport {
    pub positive_semidefinite: bool,
    pub rank: usize,
}

impl PsdReport {
    pub fn positive_definite(&self, n: usize) -> bool {
        self.positive_semidefinite && self.rank == n
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental row echelon basis of sparse vectors keyed by `K`.
///
/// Each stored row has a leading (smallest) key with coefficient one, and
/// no two rows share a leading key.
#[derive(Clone, Debug)]
pub struct SpanBuilder<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, ExactScalar>>,
}

impl<K: Ord + Clone> Default for SpanBuilder<K> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SpanBuilder<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BTreeMap<K, ExactScalar>) -> BTreeMap<K, ExactScalar> {
        v.retain(|_, c| !c.is_zero());
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(k) => Bound::Excluded(k.clone()),
                None => Bound::Unbounded,
            };
            let Some(k) = v.range((lower, Bound::Unbounded)).map(|(k, _)| k.clone()).next() else {
                break;
            };
            if let Some(row) = self.rows.get(&k) {
                let c = v[&k].clone();
                for (key, x) in row {
                    let e = v.entry(key.clone()).or_insert_with(ExactScalar::zero);
                    *e -= &(&c * x);
                    if e.is_zero() {
                        v.remove(key);
                    }
                }
            }
            cursor = Some(k);
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<K, ExactScalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: BTreeMap<K, ExactScalar>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inv().unwrap();
        let row = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }
}

/// Solution set of a sparse linear system over unknowns `0..ncols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSolution {
    /// Solution with all free variables set to zero.
    pub particular: Vec<ExactScalar>,
    /// Basis of the homogeneous solution space, one vector per free variable.
    pub kernel: Vec<Vec<ExactScalar>>,
}

/// Solves `Σ_k row[k]·x[k] = rhs` for every `(row, rhs)`; `None` when inconsistent.
pub fn solve_sparse(
    ncols: usize,
    equations: impl IntoIterator<Item = (BTreeMap<usize, ExactScalar>, ExactScalar)>,
) -> Option<SparseSolution> {
    let mut echelon = SpanBuilder::new();
    for (mut row, rhs) in equations {
        debug_assert!(row.keys().all(|&k| k < ncols));
        if !rhs.is_zero() {
            row.insert(ncols, rhs);
        }
        echelon.insert(row);
    }
    if echelon.rows.contains_key(&ncols) {
        return None;
    }
    let back_substitute = |x: &mut Vec<ExactScalar>, homogeneous: bool| {
        for (&p, row) in echelon.rows.iter().rev() {
            let mut val = if homogeneous {
                ExactScalar::zero()
            } else {
                row.get(&ncols).cloned().unwrap_or_default()
            };
            for (&k, c) in row.range(p + 1..ncols) {
                if !x[k].is_zero() {
                    val -= &(c * &x[k]);
                }
            }
            x[p] = val;
        }
    };
    let mut particular = vec![ExactScalar::zero(); ncols];
    back_substitute(&mut particular, false);
    let kernel = (0..ncols)
        .filter(|f| !echelon.rows.contains_key(f))
        .map(|f| {
            let mut x = vec![ExactScalar::zero(); ncols];
            x[f] = ExactScalar::one();
            back_substitute(&mut x, true);
            x
        })
        .collect();
    Some(SparseSolution { particular, kernel })
}

pub fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[ExactScalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect())
    }

    #[test]
    fn rref_rank_nullspace() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&ns[0])));
        assert_eq!(ns[0], vec![s(-1), s(-1), s(1)]);
    }

    #[test]
    fn inverse_of_hilbert_like_matrix() {
        let m = Matrix::from_fn(3, 3, |i, j| ExactScalar::ratio(1, (i + j + 1) as i64));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(inv[(0, 0)], s(9));
        assert!(int_matrix(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn psd_classification() {
        assert_eq!(
            int_matrix(&[&[2, 1], &[1, 2]]).hermitian_psd(),
            PsdReport { positive_semidefinite: true, rank: 2 }
        );
        assert_eq!(
            int_matrix(&[&[1, 1], &[1, 1]]).hermitian_psd(),
            PsdReport { positive_semidefinite: true, rank: 1 }
        );
        assert!(!int_matrix(&[&[1, 2], &[2, 1]]).hermitian_psd().positive_semidefinite);
        assert!(!int_matrix(&[&[0, 1], &[1, 0]]).hermitian_psd().positive_semidefinite);
        assert!(!int_matrix(&[&[1, 0], &[1, 1]]).hermitian_psd().positive_semidefinite);
        let h = Matrix::from_rows(vec![
            vec![s(2), ExactScalar::i()],
            vec![-ExactScalar::i(), s(2)],
        ]);
        assert!(h.hermitian_psd().positive_definite(2));
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = int_matrix(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], s(1));
        assert_eq!(k[(3, 2)], s(4));
        assert_eq!(k[(2, 1)], s(3));
    }

    #[test]
    fn span_builder_matches_dense_rank() {
        let mut sb = SpanBuilder::new();
        let vecs = [[1, 2, 0], [2, 4, 0], [0, 1, 1], [1, 3, 1]];
        for v in vecs {
            sb.insert(v.iter().enumerate().map(|(i, &x)| (i, s(x))).collect());
        }
        assert_eq!(sb.rank(), 2);
        assert!(sb.contains([(0usize, s(1)), (1, s(1)), (2, s(-1))].into_iter().collect()));
        assert!(!sb.contains([(2usize, s(1))].into_iter().collect()));
    }

    #[test]
    fn sparse_solver_particular_and_kernel() {
        // x0 + x1 = 3, x1 - x2 = 1
        let eqs = vec![
            (BTreeMap::from([(0usize, s(1)), (1, s(1))]), s(3)),
            (BTreeMap::from([(1usize, s(1)), (2, s(-1))]), s(1)),
        ];
        let sol = solve_sparse(3, eqs).unwrap();
        assert_eq!(sol.particular, vec![s(2), s(1), s(0)]);
        assert_eq!(sol.kernel, vec![vec![s(-1), s(1), s(1)]]);
        let bad = vec![
            (BTreeMap::from([(0usize, s(1))]), s(1)),
            (BTreeMap::from([(0usize, s(2))]), s(3)),
        ];
        assert!(solve_sparse(1, bad).is_none());
    }

    proptest! {
        #[test]
        fn psd_of_gram_products(entries in proptest::collection::vec(-5i64..5, 12)) {
            let b = Matrix::from_fn(3, 4, |i, j| s(entries[i * 4 + j]));
            let g = b.conj_transpose().mul(&b);
            let rep = g.hermitian_psd();
            prop_assert!(rep.positive_semidefinite);
            prop_assert_eq!(rep.rank, b.rank());
        }

        #[test]
        fn span_rank_agrees_with_rref(entries in proptest::collection::vec(-3i64..3, 20)) {
            let m = Matrix::from_fn(4, 5, |i, j| s(entries[i * 5 + j]));
            let mut sb = SpanBuilder::new();
            for i in 0..4 {
                sb.insert(m.row(i).iter().cloned().enumerate().collect());
            }
            prop_assert_eq!(sb.rank(), m.rank());
        }
    }
}
