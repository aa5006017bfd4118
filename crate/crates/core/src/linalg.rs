//! Dense matrices and canonical subspaces over GF(q).

use thiserror::Error;

use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("row length {got} does not match {expected} columns")]
    RowLength { expected: usize, got: usize },
}

/// Row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Elem::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Elem>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::RowLength {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(r, j)] = self[(r, c)];
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix::from_vec(rows.len(), self.cols, data)
    }

    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "stacking needs equal widths");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(self.rows + other.rows, self.cols, data)
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn left_mul_vec(&self, v: &[Elem], f: &Field) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.mul_add(*o, coef, x);
            }
        }
        out
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[Elem], f: &Field) -> Vec<Elem> {
        self.row_iter().map(|row| f.dot(row, v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for x in self.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                let factor = f.neg(factor);
                for j in c..self.cols {
                    let v = self[(r, j)];
                    self[(i, j)] = f.mul_add(self[(i, j)], factor, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, f: &Field) -> Echelon {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f);
        Echelon {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rank
    }

    /// Determinant of a square matrix by elimination.
    pub fn det(&self, f: &Field) -> Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut acc = Elem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Elem::ZERO;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                acc = f.neg(acc);
            }
            let pivot = m[(c, c)];
            acc = f.mul(acc, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = f.neg(f.mul(m[(i, c)], inv));
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)];
                    m[(i, j)] = f.mul_add(m[(i, j)], factor, v);
                }
            }
        }
        acc
    }

    /// Basis of `{x : self * x = 0}`, one vector per row, read off the RREF.
    pub fn kernel(&self, f: &Field) -> Matrix {
        let ech = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out[(k, fc)] = Elem::ONE;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                out[(k, pc)] = f.neg(ech.matrix[(r, fc)]);
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Elem {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elem {
        &mut self.data[r * self.cols + c]
    }
}

#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Echelon {
    /// The nonzero rows of the reduced form.
    pub fn basis(&self) -> Matrix {
        self.matrix.select_rows(&(0..self.rank).collect::<Vec<_>>())
    }
}

/// First kernel vector of the matrix whose columns are `vectors`, i.e. a
/// nonzero `(c_1, ..., c_s)` with `sum c_i v_i = 0`, or `None` if the vectors
/// are independent.
pub fn solve_dependence(vectors: &[Vec<Elem>], f: &Field) -> Option<Vec<Elem>> {
    let s = vectors.len();
    if s == 0 {
        return None;
    }
    let len = vectors[0].len();
    assert!(
        vectors.iter().all(|v| v.len() == len),
        "vectors of unequal length"
    );
    let mut m = Matrix::zeros(len, s);
    for (j, v) in vectors.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    let k = m.kernel(f);
    (k.rows() > 0).then(|| k.row(0).to_vec())
}

/// A subspace of GF(q)^m in canonical form: the unique RREF basis.
///
/// The derived order compares ambient, dimension, pivot pattern, then the
/// basis entries row-major. For a fixed pivot pattern only the free entries
/// vary, so this is exactly the enumeration order of [`enumerate_subspaces`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    pivots: Vec<usize>,
    entries: Vec<Elem>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            dim: 0,
            pivots: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace {
            ambient,
            dim: ambient,
            pivots: (0..ambient).collect(),
            entries: Matrix::identity(ambient).data,
        }
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(ambient: usize, coords: &[usize]) -> Self {
        let mut pivots: Vec<usize> = coords.to_vec();
        pivots.sort_unstable();
        pivots.dedup();
        let mut basis = Matrix::zeros(pivots.len(), ambient);
        for (r, &c) in pivots.iter().enumerate() {
            basis[(r, c)] = Elem::ONE;
        }
        Subspace {
            ambient,
            dim: pivots.len(),
            pivots,
            entries: basis.data,
        }
    }

    pub fn from_rows(m: &Matrix, f: &Field) -> Self {
        let ech = m.rref(f);
        Subspace {
            ambient: m.cols(),
            dim: ech.rank,
            entries: ech.basis().data,
            pivots: ech.pivots,
        }
    }

    pub fn from_vectors(ambient: usize, vs: &[Vec<Elem>], f: &Field) -> Self {
        let m = Matrix::from_rows(ambient, vs).expect("vector lengths match ambient");
        Subspace::from_rows(&m, f)
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Matrix {
        Matrix::from_vec(self.dim, self.ambient, self.entries.clone())
    }

    pub fn basis_row(&self, r: usize) -> &[Elem] {
        &self.entries[r * self.ambient..(r + 1) * self.ambient]
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.dim).map(move |r| self.basis_row(r))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    /// Membership test by reducing `v` against the RREF rows.
    pub fn contains_vector(&self, v: &[Elem], f: &Field) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            let c = f.neg(c);
            for (x, &b) in w.iter_mut().zip(self.basis_row(r)) {
                *x = f.mul_add(*x, c, b);
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    /// `self <= other`: every basis row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace, f: &Field) -> bool {
        self.ambient == other.ambient
            && self.dim <= other.dim
            && self.basis_rows().all(|r| other.contains_vector(r, f))
    }

    pub fn sum(&self, other: &Subspace, f: &Field) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows(&self.basis().stack(&other.basis()), f))
    }

    pub fn intersection(&self, other: &Subspace, f: &Field) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.dim == 0 || other.dim == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // x U + y W = 0 gives x U in the intersection
        let stacked = self.basis().stack(&other.basis());
        let left = stacked.transpose().kernel(f);
        let mut vs = Vec::with_capacity(left.rows());
        let ub = self.basis();
        for row in left.row_iter() {
            vs.push(ub.left_mul_vec(&row[..self.dim], f));
        }
        Ok(Subspace::from_vectors(self.ambient, &vs, f))
    }

    pub fn with_vector(&self, v: &[Elem], f: &Field) -> Subspace {
        let mut rows: Vec<Vec<Elem>> = self.basis_rows().map(|r| r.to_vec()).collect();
        rows.push(v.to_vec());
        Subspace::from_vectors(self.ambient, &rows, f)
    }

    pub fn intersection_dim(&self, other: &Subspace, f: &Field) -> usize {
        let s = self.sum(other, f).expect("same ambient");
        self.dim + other.dim - s.dim
    }

    /// Vectors extending a basis of `self` to one of `outer`, chosen greedily
    /// from the RREF rows of `outer`.
    pub fn complement_in(&self, outer: &Subspace, f: &Field) -> Vec<Vec<Elem>> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for r in outer.basis_rows() {
            if cur.dim == outer.dim {
                break;
            }
            if !cur.contains_vector(r, f) {
                cur = cur.with_vector(r, f);
                out.push(r.to_vec());
            }
        }
        out
    }
}

/// Yields every k-subspace of GF(q)^m once, in canonical order: pivot
/// patterns lexicographically, then free entries row-major as base-q digits
/// (most significant first).
pub fn enumerate_subspaces(m: usize, k: usize, f: &Field) -> Vec<Subspace> {
    assert!(k <= m, "subspace dimension exceeds ambient");
    let q = f.order();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let p = pivots[r];
                let piv = &pivots;
                (p + 1..m)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut entries = vec![Elem::ZERO; k * m];
            for (r, &p) in pivots.iter().enumerate() {
                entries[r * m + p] = Elem::ONE;
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                entries[r * m + c] = Elem(d as u8);
            }
            out.push(Subspace {
                ambient: m,
                dim: k,
                pivots: pivots.clone(),
                entries,
            });
            if !increment_digits(&mut digits, q) {
                break;
            }
        }
        if !next_combination(&mut pivots, m) {
            break;
        }
    }
    out
}

/// Base-q counter with the last digit fastest; false once it wraps.
fn increment_digits(d: &mut [usize], q: usize) -> bool {
    for x in d.iter_mut().rev() {
        *x += 1;
        if *x < q {
            return true;
        }
        *x = 0;
    }
    false
}

/// Advances a strictly increasing tuple over `0..n` lexicographically.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All subspaces `T` of dimension `k` with `inner <= T <= outer`, sorted canonically.
pub fn subspaces_between(inner: &Subspace, outer: &Subspace, k: usize, f: &Field) -> Vec<Subspace> {
    if k < inner.dim() || k > outer.dim() || !inner.is_subspace_of(outer, f) {
        return Vec::new();
    }
    let comp = inner.complement_in(outer, f);
    let inner_rows: Vec<Vec<Elem>> = inner.basis_rows().map(|r| r.to_vec()).collect();
    let mut out: Vec<Subspace> = enumerate_subspaces(comp.len(), k - inner.dim(), f)
        .into_iter()
        .map(|s| {
            let mut rows = inner_rows.clone();
            for coeffs in s.basis_rows() {
                let mut v = vec![Elem::ZERO; inner.ambient()];
                for (&c, cv) in coeffs.iter().zip(&comp) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(cv) {
                        *x = f.mul_add(*x, c, y);
                    }
                }
                rows.push(v);
            }
            Subspace::from_vectors(inner.ambient(), &rows, f)
        })
        .collect();
    out.sort();
    out
}
