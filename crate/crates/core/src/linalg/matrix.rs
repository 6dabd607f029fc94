//! Dense row-major matrices over a prime field.
//!
//! Maps act on column vectors from the left, so `g ∘ f` is the product `G · F`.

use std::fmt;

use super::field::{FieldElem, PrimeField};
use super::NoSolution;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixK {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixK,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl MatrixK {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatrixK {
            field,
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixK {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.elem(rows[i][j]))
    }

    pub fn from_elems(field: PrimeField, rows: usize, cols: usize, data: Vec<FieldElem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        MatrixK {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A single column.
    pub fn column_vector(field: PrimeField, v: &[FieldElem]) -> Self {
        Self::from_elems(field, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<FieldElem>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows));
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.value() as i64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let want = if i == j { FieldElem::ONE } else { FieldElem::ZERO };
                    self.get(i, j) == want
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &MatrixK) -> MatrixK {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let k = self.field;
        let p = k.modulus() as u64;
        let mut out = MatrixK::zeros(k, self.rows, other.cols);
        // p < 2^31, so slot + a*b stays below 2^63
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for l in 0..self.cols {
                let a = self.get(i, l).value() as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(l, j).value() as u64) % p;
                }
            }
            for (j, v) in acc.iter().enumerate() {
                out.set(i, j, FieldElem::from_reduced(*v as u32));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        let k = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| k.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, other: &MatrixK) -> MatrixK {
        assert_eq!(self.shape(), other.shape());
        let k = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect();
        MatrixK::from_elems(k, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &MatrixK) -> MatrixK {
        assert_eq!(self.shape(), other.shape());
        let k = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect();
        MatrixK::from_elems(k, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: FieldElem) -> MatrixK {
        let k = self.field;
        let data = self.data.iter().map(|&a| k.mul(a, c)).collect();
        MatrixK::from_elems(k, self.rows, self.cols, data)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: FieldElem, other: &MatrixK) -> MatrixK {
        assert_eq!(self.shape(), other.shape());
        let k = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| k.mul_add(a, c, b))
            .collect();
        MatrixK::from_elems(k, self.rows, self.cols, data)
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &MatrixK) -> MatrixK {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// Block diagonal matrix with the given blocks in order.
    pub fn block_diag(field: PrimeField, blocks: &[&MatrixK]) -> MatrixK {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatrixK::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> MatrixK {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j))
    }

    /// Reduced row echelon form, pivot columns (increasing) and rank.
    pub fn rref(&self) -> Rref {
        let k = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = k.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let nf = k.neg(f);
                for j in c..m.cols {
                    let v = k.mul_add(m.get(i, j), nf, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : Av = 0}`, one vector per free column, each with a 1 in
    /// its free position, ordered by free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let k = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElem::ZERO; self.cols];
                v[free] = FieldElem::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// One particular solution of `Ax = b` with all free variables zero.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Vec<FieldElem>, NoSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&MatrixK::column_vector(self.field, b));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(NoSolution);
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols);
        }
        Ok(x)
    }

    /// Solves `AX = B` column by column.
    pub fn solve_matrix(&self, b: &MatrixK) -> Result<MatrixK, NoSolution> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(NoSolution);
        }
        let mut x = MatrixK::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, matrix.get(r, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<MatrixK> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_matrix(&MatrixK::identity(self.field, n)).ok()?;
        (self.mul(&x).is_identity()).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> MatrixK {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = MatrixK::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Basis (as columns) of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<FieldElem>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }
}

impl fmt::Debug for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]_{}x{}", self.rows, self.cols)
    }
}
