use std::fmt;

use crate::linalg::{FieldElem, MatrixK};

use super::{AlgebraError, ArtinAlgebra, RingElem};

/// A matrix over `R`, stored as its coefficient layers: `A = Σ_s A_s b_s`
/// with each `A_s` a k-matrix of the same shape.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixR {
    rows: usize,
    cols: usize,
    layers: Vec<MatrixK>,
}

impl MatrixR {
    pub fn zeros(alg: &ArtinAlgebra, rows: usize, cols: usize) -> Self {
        MatrixR {
            rows,
            cols,
            layers: vec![MatrixK::zeros(alg.field(), rows, cols); alg.dim()],
        }
    }

    pub fn identity(alg: &ArtinAlgebra, n: usize) -> Self {
        Self::embed(alg, &MatrixK::identity(alg.field(), n))
    }

    /// `R ⊗_k A`: entries `c ↦ c · 1`.
    pub fn embed(alg: &ArtinAlgebra, a: &MatrixK) -> Self {
        let mut out = Self::zeros(alg, a.rows(), a.cols());
        out.layers[0] = a.clone();
        out
    }

    pub fn from_layers(layers: Vec<MatrixK>) -> Self {
        let (rows, cols) = layers.first().expect("at least one layer").shape();
        assert!(layers.iter().all(|l| l.shape() == (rows, cols)));
        MatrixR { rows, cols, layers }
    }

    pub fn from_entries(alg: &ArtinAlgebra, rows: usize, cols: usize, entries: &[RingElem]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let layers = (0..alg.dim())
            .map(|s| MatrixK::from_fn(alg.field(), rows, cols, |i, j| entries[i * cols + j].coeff(s)))
            .collect();
        MatrixR { rows, cols, layers }
    }

    /// Entries given as integer coefficient vectors, row-major.
    pub fn from_coeff_rows(alg: &ArtinAlgebra, rows: &[Vec<Vec<i64>>], cols: usize) -> Self {
        let entries: Vec<RingElem> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|c| alg.elem(c))
            })
            .collect();
        Self::from_entries(alg, rows.len(), cols, &entries)
    }

    /// A column over `R` read from a k-vector laid out as `(row, basis index)` pairs.
    pub fn column_from_kvec(alg: &ArtinAlgebra, v: &[FieldElem]) -> Self {
        let n = alg.dim();
        assert_eq!(v.len() % n, 0);
        let rows = v.len() / n;
        let layers = (0..n)
            .map(|s| MatrixK::from_fn(alg.field(), rows, 1, |i, _| v[i * n + s]))
            .collect();
        MatrixR { rows, cols: 1, layers }
    }

    /// Matrix whose columns are the given k-vectors read as `R`-columns.
    pub fn from_kvec_columns(alg: &ArtinAlgebra, rows: usize, columns: &[Vec<FieldElem>]) -> Self {
        let n = alg.dim();
        let layers = (0..n)
            .map(|s| MatrixK::from_fn(alg.field(), rows, columns.len(), |i, j| columns[j][i * n + s]))
            .collect();
        MatrixR {
            rows,
            cols: columns.len(),
            layers,
        }
    }

    /// Column `j` as a k-vector of length `rows · n`.
    pub fn column_kvec(&self, j: usize) -> Vec<FieldElem> {
        let n = self.layers.len();
        let mut v = vec![FieldElem::ZERO; self.rows * n];
        for i in 0..self.rows {
            for s in 0..n {
                v[i * n + s] = self.layers[s].get(i, j);
            }
        }
        v
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn layers(&self) -> &[MatrixK] {
        &self.layers
    }

    pub fn layer(&self, s: usize) -> &MatrixK {
        &self.layers[s]
    }

    pub fn entry(&self, i: usize, j: usize) -> RingElem {
        RingElem::from_coeffs(self.layers.iter().map(|l| l.get(i, j)).collect())
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: &RingElem) {
        for (s, l) in self.layers.iter_mut().enumerate() {
            l.set(i, j, v.coeff(s));
        }
    }

    pub fn entries(&self) -> Vec<RingElem> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(|l| l.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.layers[0].is_identity() && self.layers[1..].iter().all(|l| l.is_zero())
    }

    /// Entrywise residue `R → k`; realizes `k ⊗_R A`.
    pub fn residue(&self) -> MatrixK {
        self.layers[0].clone()
    }

    pub fn add(&self, other: &MatrixR) -> MatrixR {
        assert_eq!(self.shape(), other.shape());
        MatrixR {
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().zip(&other.layers).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &MatrixR) -> MatrixR {
        assert_eq!(self.shape(), other.shape());
        MatrixR {
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().zip(&other.layers).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale_k(&self, c: FieldElem) -> MatrixR {
        MatrixR {
            rows: self.rows,
            cols: self.cols,
            layers: self.layers.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Entrywise multiplication by `r ∈ R`.
    pub fn scale(&self, alg: &ArtinAlgebra, r: &RingElem) -> MatrixR {
        let n = alg.dim();
        let mut out = Self::zeros(alg, self.rows, self.cols);
        for (s, a) in self.layers.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for m in 0..n {
                let rm = r.coeff(m);
                if rm.is_zero() {
                    continue;
                }
                for (l, &c) in alg.product_coords(s, m).iter().enumerate() {
                    if !c.is_zero() {
                        out.layers[l] = out.layers[l].add_scaled(alg.field().mul(c, rm), a);
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, alg: &ArtinAlgebra, other: &MatrixR) -> MatrixR {
        assert_eq!(self.cols, other.rows, "shape mismatch in product over R");
        let n = alg.dim();
        let mut out = Self::zeros(alg, self.rows, other.cols);
        for s in 0..n {
            if self.layers[s].is_zero() {
                continue;
            }
            for m in 0..n {
                if other.layers[m].is_zero() {
                    continue;
                }
                let prod = self.layers[s].mul(&other.layers[m]);
                for (l, &c) in alg.product_coords(s, m).iter().enumerate() {
                    if !c.is_zero() {
                        out.layers[l] = out.layers[l].add_scaled(c, &prod);
                    }
                }
            }
        }
        out
    }

    /// The underlying k-linear map `k^{cols·n} → k^{rows·n}`, with coordinate
    /// `(i, l)` at index `i·n + l`.
    pub fn k_matrix(&self, alg: &ArtinAlgebra) -> MatrixK {
        let n = alg.dim();
        let mut out = MatrixK::zeros(alg.field(), self.rows * n, self.cols * n);
        let k = alg.field();
        for (s, a) in self.layers.iter().enumerate() {
            let ls = alg.left_mult_matrix(s);
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let c = a.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        for m in 0..n {
                            let cur = out.get(i * n + l, j * n + m);
                            out.set(i * n + l, j * n + m, k.mul_add(cur, c, ls.get(l, m)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies a k-linear coordinate change `R → R'` entrywise; `theta` has shape `n' × n`.
    pub fn map_coords(&self, theta: &MatrixK) -> MatrixR {
        let layers = (0..theta.rows())
            .map(|t| {
                self.layers
                    .iter()
                    .enumerate()
                    .fold(MatrixK::zeros(theta.field(), self.rows, self.cols), |acc, (s, a)| {
                        acc.add_scaled(theta.get(t, s), a)
                    })
            })
            .collect();
        MatrixR {
            rows: self.rows,
            cols: self.cols,
            layers,
        }
    }

    /// Over a local ring a square matrix is invertible iff its residue is.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.layers[0].is_invertible()
    }

    /// Inverse by lifting the residue inverse and refining with `X ← X(2I − AX)`.
    pub fn inverse(&self, alg: &ArtinAlgebra) -> Result<MatrixR, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotInvertible {
                residue_rank: self.layers[0].rank(),
            });
        }
        let b0 = self.layers[0].inverse().ok_or(AlgebraError::NotInvertible {
            residue_rank: self.layers[0].rank(),
        })?;
        let n = self.rows;
        let two_i = MatrixR::identity(alg, n).scale_k(alg.field().elem(2));
        let mut x = MatrixR::embed(alg, &b0);
        // the error I − AX lies in m^{2^j} after j steps
        let steps = usize::BITS - (alg.length().max(1) - 1).leading_zeros() + 1;
        for _ in 0..steps {
            x = x.mul(alg, &two_i.sub(&self.mul(alg, &x)));
        }
        debug_assert!(self.mul(alg, &x).is_identity());
        Ok(x)
    }

    pub fn transpose(&self) -> MatrixR {
        MatrixR {
            rows: self.cols,
            cols: self.rows,
            layers: self.layers.iter().map(|l| l.transpose()).collect(),
        }
    }

    /// Block diagonal over `R`.
    pub fn block_diag(alg: &ArtinAlgebra, blocks: &[&MatrixR]) -> MatrixR {
        let layers = (0..alg.dim())
            .map(|s| {
                let ls: Vec<&MatrixK> = blocks.iter().map(|b| &b.layers[s]).collect();
                MatrixK::block_diag(alg.field(), &ls)
            })
            .collect();
        MatrixR {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols: blocks.iter().map(|b| b.cols).sum(),
            layers,
        }
    }

    pub fn hstack(&self, other: &MatrixR) -> MatrixR {
        MatrixR {
            rows: self.rows,
            cols: self.cols + other.cols,
            layers: self
                .layers
                .iter()
                .zip(&other.layers)
                .map(|(a, b)| a.hstack(b))
                .collect(),
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> MatrixR {
        MatrixR {
            rows: rows.len(),
            cols: cols.len(),
            layers: self
                .layers
                .iter()
                .map(|l| l.submatrix(rows.clone(), cols.clone()))
                .collect(),
        }
    }

    /// Integer coefficient vectors, row-major, for serialization.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.layers.iter().map(|l| l.get(i, j).value() as i64).collect())
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for MatrixR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixR{:?}", self.to_coeff_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn dual(p: u64) -> ArtinAlgebra {
        ArtinAlgebra::dual_numbers(PrimeField::new(p).unwrap())
    }

    #[test]
    fn one_by_one_unit_inverse() {
        let r = dual(3);
        let a = MatrixR::from_entries(&r, 1, 1, &[r.elem(&[1, 1])]);
        assert!(a.is_invertible());
        let inv = a.inverse(&r).unwrap();
        assert_eq!(inv.entry(0, 0), r.elem(&[1, -1]));
    }

    #[test]
    fn nilpotent_entry_not_invertible() {
        let r = dual(3);
        let a = MatrixR::from_entries(&r, 1, 1, &[r.basis(1)]);
        assert!(!a.is_invertible());
        assert_eq!(a.inverse(&r), Err(AlgebraError::NotInvertible { residue_rank: 0 }));
    }

    #[test]
    fn identity_is_self_inverse() {
        for r in [
            ArtinAlgebra::ground_field(PrimeField::new(5).unwrap()),
            dual(2),
            ArtinAlgebra::truncated_polynomial(PrimeField::new(3).unwrap(), 3, "e"),
        ] {
            let id = MatrixR::identity(&r, 3);
            assert_eq!(id.inverse(&r).unwrap(), id);
        }
    }

    #[test]
    fn k_matrix_is_multiplicative() {
        let k = PrimeField::new(5).unwrap();
        let r = ArtinAlgebra::truncated_polynomial(k, 3, "e");
        let a = MatrixR::from_coeff_rows(
            &r,
            &[vec![vec![1, 2, 0], vec![0, 1, 4]], vec![vec![3, 0, 1], vec![2, 2, 2]]],
            2,
        );
        let b = MatrixR::from_coeff_rows(&r, &[vec![vec![0, 1, 0]], vec![vec![4, 0, 3]]], 1);
        assert_eq!(a.mul(&r, &b).k_matrix(&r), a.k_matrix(&r).mul(&b.k_matrix(&r)));
    }

    #[test]
    fn kvec_columns_round_trip() {
        let k = PrimeField::new(3).unwrap();
        let r = ArtinAlgebra::square_zero(k, &["x", "y"]);
        let a = MatrixR::from_coeff_rows(
            &r,
            &[vec![vec![1, 2, 0], vec![0, 1, 1]], vec![vec![2, 0, 1], vec![1, 1, 1]]],
            2,
        );
        let cols: Vec<_> = (0..2).map(|j| a.column_kvec(j)).collect();
        assert_eq!(MatrixR::from_kvec_columns(&r, 2, &cols), a);
    }
}
