//! Dense exact matrices over a [`Field`], with Gaussian elimination,
//! kernels, solving and subspace arithmetic. Row-major storage; matrices
//! act on column vectors.

use std::hash::{Hash, Hasher};

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Hash for Mat<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> Mat<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    pub fn zero(f: &F, rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![f.zero(); rows * cols])
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Mat::zero(f, n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Mat::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn neg(&self, f: &F) -> Self {
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn matmul(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, &other[(k, j)]);
                    out[(i, j)] = f.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(&self[(i, j)], &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn hstack(f: &F, parts: &[&Mat<F>]) -> Self {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|m| m.rows == rows));
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(f, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out[(i, off + j)] = m[(i, j)].clone();
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(f: &F, parts: &[&Mat<F>]) -> Self {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|m| m.cols == cols));
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zero(f, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..m.rows {
                for j in 0..cols {
                    out[(off + i, j)] = m[(i, j)].clone();
                }
            }
            off += m.rows;
        }
        out
    }

    /// Direct sum: block-diagonal assembly.
    pub fn block_diag(f: &F, parts: &[&Mat<F>]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(f, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out[(ro + i, co + j)] = m[(i, j)].clone();
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn from_cols(f: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut out = Mat::zero(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                out[(i, j)] = c[i].clone();
            }
        }
        out
    }

    pub fn from_rows(f: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut out = Mat::zero(f, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for j in 0..cols {
                out[(i, j)] = r[j].clone();
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find a pivot row
            let mut pr = None;
            for i in r..self.rows {
                if !f.is_zero(&self[(i, c)]) {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(r, pr);
            let inv = f.inv(&self[(r, c)]).expect("pivot invertible");
            for j in c..self.cols {
                self[(r, j)] = f.mul(&self[(r, j)], &inv);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(&self[(i, c)]) {
                    let t = self[(i, c)].clone();
                    for j in c..self.cols {
                        let s = f.mul(&t, &self[(r, j)]);
                        self[(i, j)] = f.sub(&self[(i, j)], &s);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &F) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the right kernel, returned as columns.
    pub fn kernel_basis(&self, f: &F) -> Mat<F> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = f.neg(&m[(r, fc)]);
            }
        }
        out
    }

    pub fn det(&self, f: &F) -> F::Elem {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let mut pr = None;
            for i in c..n {
                if !f.is_zero(&m[(i, c)]) {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { return f.zero() };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(&det);
            }
            det = f.mul(&det, &m[(c, c)]);
            let inv = f.inv(&m[(c, c)]).unwrap();
            for i in c + 1..n {
                if f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let t = f.mul(&m[(i, c)], &inv);
                for j in c..n {
                    let s = f.mul(&t, &m[(c, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &s);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &F) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Mat::hstack(f, &[self, &Mat::identity(f, n)]);
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(aug.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(n..2 * n).collect::<Vec<_>>(),
        ))
    }

    pub fn is_invertible(&self, f: &F) -> bool {
        self.rows == self.cols && !f.is_zero(&self.det(f))
    }

    /// Any solution `x` of `self * x = b`, if one exists.
    pub fn solve(&self, f: &F, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let bm = Mat::from_cols(f, self.rows, &[b.to_vec()]);
        let mut aug = Mat::hstack(f, &[self, &bm]);
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Row-space basis in RREF with zero rows dropped: a canonical form
    /// for subspaces, suitable for dedup by equality or hashing.
    pub fn row_basis(&self, f: &F) -> Mat<F> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let rank = pivots.len();
        m.submatrix(
            &(0..rank).collect::<Vec<_>>(),
            &(0..self.cols).collect::<Vec<_>>(),
        )
    }

    /// Column-space basis (image of the matrix), as columns.
    pub fn image_basis(&self, f: &F) -> Mat<F> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &pivots)
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Does the row space of `space` (RREF) contain `v`?
pub fn row_space_contains<F: Field>(f: &F, space: &Mat<F>, v: &[F::Elem]) -> bool {
    // reduce v against the rows
    let mut v = v.to_vec();
    for r in 0..space.rows() {
        let pc = (0..space.cols()).find(|&j| !f.is_zero(&space[(r, j)]));
        let Some(pc) = pc else { continue };
        if !f.is_zero(&v[pc]) {
            let t = f.div(&v[pc], &space[(r, pc)]).unwrap();
            for j in 0..space.cols() {
                let s = f.mul(&t, &space[(r, j)]);
                v[j] = f.sub(&v[j], &s);
            }
        }
    }
    v.iter().all(|a| f.is_zero(a))
}
