//! Dense matrices over a [`Scalar`], with exact determinants and adjugates.
//!
//! Storage is row-major and 0-based internally. Everything that crosses the
//! public reporting boundary (minor selectors, witnesses) uses 1-based
//! [`IndexSet`]s.

use std::fmt;
use std::ops::Index;

use crate::error::{arg_err, dim_err, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim_err(format!("matrix shape {rows}x{cols} must be positive"));
        }
        if data.len() != rows * cols {
            return dim_err(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return dim_err("ragged rows");
        }
        Matrix::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from small integers; convenient for fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn min_dim(&self) -> usize {
        self.rows.min(self.cols)
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return dim_err(format!(
                "shape mismatch {:?} vs {:?}",
                self.shape(),
                other.shape()
            ));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return dim_err(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            ));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, t| {
                acc + self[(i, t)].clone() * other[(t, j)].clone()
            })
        }))
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return dim_err(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            ));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        if rows.bound_violation(self.rows) || cols.bound_violation(self.cols) {
            return dim_err(format!(
                "index sets {rows} x {cols} exceed shape {}x{}",
                self.rows, self.cols
            ));
        }
        if rows.is_empty() || cols.is_empty() {
            return dim_err("empty index set");
        }
        Ok(self.submatrix_unchecked(rows.as_slice(), cols.as_slice()))
    }

    /// `rows`, `cols` are 1-based and assumed valid.
    pub(crate) fn submatrix_unchecked(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i] - 1, cols[j] - 1)].clone()
        })
    }

    /// Drops row `i` and column `j` (0-based). The matrix must be at least 2x2.
    fn delete(&self, i: usize, j: usize) -> Self {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self[(rr, cc)].clone()
        })
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if !self.is_square() {
            return dim_err(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            ));
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<T> {
        self.require_square("det")?;
        Ok(bareiss_det(self))
    }

    /// Transpose of the cofactor matrix. The 1x1 adjugate is `[[1]]`.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square("adjugate")?;
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::identity(1));
        }
        if T::is_exact() {
            let det = bareiss_det(self);
            if !det.is_zero() {
                return Ok(inverse_exact(self).scale(&det));
            }
        }
        let mut cof = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let d = bareiss_det(&self.delete(i, j));
                cof.push(if (i + j) % 2 == 0 { d } else { -d });
            }
        }
        Ok(Matrix { rows: n, cols: n, data: cof }.transpose())
    }

    /// Minor `A^{ij}` with 1-based `i`, `j`: the determinant after deleting row
    /// `i` and column `j`. For a 1x1 matrix this is `-1` by convention (the
    /// LCP single-vector tests rely on it).
    pub fn cofactor_minor(&self, i: usize, j: usize) -> Result<T> {
        self.require_square("cofactor_minor")?;
        let n = self.rows;
        if i == 0 || j == 0 || i > n || j > n {
            return dim_err(format!("({i},{j}) outside a {n}x{n} matrix"));
        }
        if n == 1 {
            return Ok(-T::one());
        }
        Ok(bareiss_det(&self.delete(i - 1, j - 1)))
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / cols, k % cols, v))
    }

    /// First entry (row-major, 1-based) that fails `keep`.
    pub(crate) fn first_entry_failing(&self, keep: impl Fn(&T) -> bool) -> Option<(usize, usize, T)> {
        self.iter_entries()
            .find(|(_, _, v)| !keep(v))
            .map(|(i, j, v)| (i + 1, j + 1, v.clone()))
    }
}

/// Gauss-Jordan inverse of a nonsingular matrix over an exact field.
fn inverse_exact<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let n = a.rows;
    let mut m = a.data.clone();
    let mut inv = Matrix::<T>::identity(n).data;
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r * n + k].is_zero()).expect("nonsingular");
        if p != k {
            for c in 0..n {
                m.swap(k * n + c, p * n + c);
                inv.swap(k * n + c, p * n + c);
            }
        }
        let pivot = m[k * n + k].clone();
        for c in 0..n {
            m[k * n + c] = m[k * n + c].clone() / pivot.clone();
            inv[k * n + c] = inv[k * n + c].clone() / pivot.clone();
        }
        for r in 0..n {
            let f = m[r * n + k].clone();
            if r == k || f.is_zero() {
                continue;
            }
            for c in 0..n {
                m[r * n + c] = m[r * n + c].clone() - f.clone() * m[k * n + c].clone();
                inv[r * n + c] = inv[r * n + c].clone() - f.clone() * inv[k * n + c].clone();
            }
        }
    }
    Matrix { rows: n, cols: n, data: inv }
}

fn bareiss_det<T: Scalar>(a: &Matrix<T>) -> T {
    let n = a.rows;
    let mut m = a.data.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        let pivot = if T::is_exact() {
            (k..n).find(|&r| !m[r * n + k].is_zero())
        } else {
            (k..n)
                .filter(|&r| !m[r * n + k].is_zero())
                .max_by(|&x, &y| {
                    m[x * n + k]
                        .abs()
                        .partial_cmp(&m[y * n + k].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        };
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != k {
            for c in 0..n {
                m.swap(k * n + c, p * n + c);
            }
            negate = !negate;
        }
        let pkk = m[k * n + k].clone();
        for i in k + 1..n {
            let lead = m[i * n + k].clone();
            for j in k + 1..n {
                let v = (m[i * n + j].clone() * pkk.clone() - lead.clone() * m[k * n + j].clone())
                    / prev.clone();
                m[i * n + j] = v;
            }
        }
        prev = pkk;
    }
    let d = m[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    /// 0-based `(row, col)`.
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Strictly increasing set of 1-based indices selecting rows or columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates that `indices` is strictly increasing within `[1, bound]`.
    pub fn new(indices: Vec<usize>, bound: usize) -> Result<Self> {
        if indices.first() == Some(&0) {
            return arg_err("indices are 1-based");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return arg_err(format!("indices {indices:?} are not strictly increasing"));
        }
        if indices.last().is_some_and(|&l| l > bound) {
            return dim_err(format!("index {} exceeds bound {bound}", indices.last().unwrap()));
        }
        Ok(IndexSet(indices))
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet(indices)
    }

    /// `{start, start+1, ..., start+len-1}` with a 1-based `start`.
    pub fn interval(start: usize, len: usize) -> Self {
        IndexSet((start..start + len).collect())
    }

    pub fn full(n: usize) -> Self {
        IndexSet::interval(1, n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_interval(&self) -> bool {
        self.0.windows(2).all(|w| w[1] == w[0] + 1)
    }

    fn bound_violation(&self, bound: usize) -> bool {
        self.0.first() == Some(&0)
            || self.0.last().is_some_and(|&l| l > bound)
            || self.0.windows(2).any(|w| w[0] >= w[1])
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
