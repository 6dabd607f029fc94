use std::fmt;

use crate::linalg::{FieldElem, MatrixK, PrimeField};

use super::AlgebraError;

/// Coordinates of an element of `R` in the algebra's basis `b_0 = 1, b_1, …`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    coeffs: Vec<FieldElem>,
}

impl RingElem {
    pub fn from_coeffs(coeffs: Vec<FieldElem>) -> Self {
        RingElem { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs[i]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The image in the residue field `k = R/m`: the coefficient of `b_0`.
    pub fn residue(&self) -> FieldElem {
        self.coeffs[0]
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// A commutative local `k`-algebra of finite dimension `n`, presented by
/// structure constants `b_i · b_j = Σ_l c[i][j][l] b_l` with `b_0 = 1` and
/// maximal ideal `m = span(b_1, …, b_{n-1})`.
///
/// Values of this type have passed [`ArtinAlgebra::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct ArtinAlgebra {
    field: PrimeField,
    names: Vec<String>,
    table: Vec<Vec<Vec<FieldElem>>>,
    // left_mult[s] is the k-matrix of x ↦ b_s · x in coordinates
    left_mult: Vec<MatrixK>,
}

impl fmt::Debug for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArtinAlgebra(F_{}; {})", self.field.modulus(), self.names.join(", "))
    }
}

impl ArtinAlgebra {
    /// Builds and validates an algebra from its structure constants.
    pub fn new(field: PrimeField, names: Vec<String>, table: Vec<Vec<Vec<FieldElem>>>) -> Result<Self, AlgebraError> {
        let alg = Self::unchecked(field, names, table)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Checks shapes only; the ring axioms are left to [`validate`](Self::validate).
    pub fn unchecked(
        field: PrimeField,
        names: Vec<String>,
        table: Vec<Vec<Vec<FieldElem>>>,
    ) -> Result<Self, AlgebraError> {
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::Malformed(
                "algebra needs at least one basis element".into(),
            ));
        }
        if names[0] != "1" {
            return Err(AlgebraError::Malformed(format!(
                "basis element 0 must be named \"1\", found {:?}",
                names[0]
            )));
        }
        if table.len() != n
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(AlgebraError::Malformed(format!(
                "multiplication table must be {n} x {n} x {n}"
            )));
        }
        let left_mult = (0..n)
            .map(|s| MatrixK::from_fn(field, n, n, |l, m| table[s][m][l]))
            .collect();
        Ok(ArtinAlgebra {
            field,
            names,
            table,
            left_mult,
        })
    }

    /// `R = k` itself.
    pub fn ground_field(field: PrimeField) -> Self {
        Self::unchecked(field, vec!["1".into()], vec![vec![vec![FieldElem::ONE]]]).expect("well-formed")
    }

    /// `k[ε]/(ε^e)` with basis `1, ε, …, ε^{e-1}`.
    pub fn truncated_polynomial(field: PrimeField, e: usize, var: &str) -> Self {
        assert!(e >= 1);
        let names = (0..e)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            })
            .collect();
        let table = (0..e)
            .map(|i| {
                (0..e)
                    .map(|j| {
                        let mut v = vec![FieldElem::ZERO; e];
                        if i + j < e {
                            v[i + j] = FieldElem::ONE;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(field, names, table).expect("truncated polynomial ring is local Artinian")
    }

    /// The dual numbers `k[ε]/(ε²)`.
    pub fn dual_numbers(field: PrimeField) -> Self {
        Self::truncated_polynomial(field, 2, "eps")
    }

    /// `k[x_1, …, x_d]/(x_i x_j)`: a square-zero maximal ideal of dimension `d`.
    pub fn square_zero(field: PrimeField, vars: &[&str]) -> Self {
        let n = vars.len() + 1;
        let names = std::iter::once("1".to_string())
            .chain(vars.iter().map(|s| s.to_string()))
            .collect();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![FieldElem::ZERO; n];
                        if i == 0 {
                            v[j] = FieldElem::ONE;
                        } else if j == 0 {
                            v[i] = FieldElem::ONE;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(field, names, table).expect("square-zero extension is local Artinian")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `ℓ(R) = dim_k R`.
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn length(&self) -> usize {
        self.dim()
    }

    pub fn is_field(&self) -> bool {
        self.dim() == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Structure constants `c[i][j]`, the coordinates of `b_i · b_j`.
    pub fn product_coords(&self, i: usize, j: usize) -> &[FieldElem] {
        &self.table[i][j]
    }

    /// k-matrix of multiplication by `b_s`.
    pub fn left_mult_matrix(&self, s: usize) -> &MatrixK {
        &self.left_mult[s]
    }

    /// Checks unit, commutativity, associativity, nilpotency and closure of `m`,
    /// in that order, reporting the first failure with its witness.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            let bi = self.basis(i);
            if self.mul(&self.one(), &bi) != bi || self.mul(&bi, &self.one()) != bi {
                return Err(AlgebraError::NotUnital { index: i });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(AlgebraError::NotCommutative { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let bij = self.mul(&self.basis(i), &self.basis(j));
                for l in 0..n {
                    let left = self.mul(&bij, &self.basis(l));
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(l)));
                    if left != right {
                        return Err(AlgebraError::NotAssociative { i, j, l });
                    }
                }
            }
        }
        if n > 1 {
            let top = self.ideal_power_basis(n);
            if let Some(w) = top.first() {
                return Err(AlgebraError::MaxIdealNotNilpotent {
                    exponent: n,
                    witness: w.coeffs().iter().map(|c| c.value()).collect(),
                });
            }
        }
        for i in 1..n {
            for j in 1..n {
                if !self.table[i][j][0].is_zero() {
                    return Err(AlgebraError::MaxIdealNotClosed { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> RingElem {
        RingElem::from_coeffs(vec![FieldElem::ZERO; self.dim()])
    }

    pub fn one(&self) -> RingElem {
        self.basis(0)
    }

    pub fn basis(&self, i: usize) -> RingElem {
        let mut v = vec![FieldElem::ZERO; self.dim()];
        v[i] = FieldElem::ONE;
        RingElem::from_coeffs(v)
    }

    /// `c · 1`
    pub fn embed(&self, c: FieldElem) -> RingElem {
        let mut v = vec![FieldElem::ZERO; self.dim()];
        v[0] = c;
        RingElem::from_coeffs(v)
    }

    pub fn elem(&self, coeffs: &[i64]) -> RingElem {
        assert_eq!(coeffs.len(), self.dim());
        RingElem::from_coeffs(coeffs.iter().map(|&c| self.field.elem(c)).collect())
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.field;
        RingElem::from_coeffs(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| k.add(x, y)).collect())
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.field;
        RingElem::from_coeffs(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| k.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        let k = self.field;
        RingElem::from_coeffs(a.coeffs.iter().map(|&x| k.neg(x)).collect())
    }

    pub fn scale(&self, c: FieldElem, a: &RingElem) -> RingElem {
        let k = self.field;
        RingElem::from_coeffs(a.coeffs.iter().map(|&x| k.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.field;
        let n = self.dim();
        let mut out = vec![FieldElem::ZERO; n];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = k.mul(ai, bj);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = k.mul_add(*o, c, t);
                }
            }
        }
        RingElem::from_coeffs(out)
    }

    pub fn residue(&self, a: &RingElem) -> FieldElem {
        a.residue()
    }

    /// In a local ring the units are exactly the elements outside `m`.
    pub fn is_unit(&self, a: &RingElem) -> bool {
        !a.residue().is_zero()
    }

    /// `a⁻¹ = c⁻¹ Σ_{i<n} (1 − a/c)^i` where `c` is the residue of `a`;
    /// the series is finite because `1 − a/c ∈ m` and `m^n = 0`.
    pub fn inverse(&self, a: &RingElem) -> Result<RingElem, AlgebraError> {
        let k = self.field;
        let c_inv = k.inv(a.residue()).ok_or(AlgebraError::NotAUnit)?;
        let u = self.sub(&self.one(), &self.scale(c_inv, a));
        let mut term = self.one();
        let mut sum = self.zero();
        for _ in 0..self.dim() {
            sum = self.add(&sum, &term);
            term = self.mul(&term, &u);
        }
        debug_assert!(term.is_zero());
        Ok(self.scale(c_inv, &sum))
    }

    /// Echelon basis of `m^e`, the span of all `e`-fold products of basis
    /// elements of `m`. Empty when `m^e = 0`.
    pub fn ideal_power_basis(&self, e: usize) -> Vec<RingElem> {
        assert!(e >= 1, "ideal powers start at 1");
        let n = self.dim();
        let mut current: Vec<RingElem> = (1..n).map(|i| self.basis(i)).collect();
        for _ in 1..e {
            if current.is_empty() {
                break;
            }
            let products: Vec<RingElem> = (1..n)
                .flat_map(|i| current.iter().map(move |v| (i, v)))
                .map(|(i, v)| self.mul(&self.basis(i), v))
                .collect();
            current = self.echelon(&products);
        }
        self.echelon(&current)
    }

    /// Nonzero rows of the reduced row echelon form of the given elements.
    pub fn echelon(&self, elems: &[RingElem]) -> Vec<RingElem> {
        if elems.is_empty() {
            return Vec::new();
        }
        let m = MatrixK::from_fn(self.field, elems.len(), self.dim(), |i, j| elems[i].coeffs[j]);
        let r = m.rref();
        (0..r.rank)
            .map(|i| RingElem::from_coeffs(r.matrix.row(i).to_vec()))
            .collect()
    }

    /// Smallest `q` with `m^q = 0` (the Loewy length); 1 for a field.
    pub fn nilpotency_index(&self) -> usize {
        (1..=self.dim())
            .find(|&q| self.ideal_power_basis(q).is_empty())
            .unwrap_or(self.dim())
    }

    pub fn format_elem(&self, a: &RingElem) -> String {
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match (i, c.value()) {
                (0, _) => c.to_string(),
                (_, 1) => self.names[i].clone(),
                _ => format!("{}*{}", c, self.names[i]),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
