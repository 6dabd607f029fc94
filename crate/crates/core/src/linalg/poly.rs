//! Univariate polynomials over `F_p`: arithmetic, minimal polynomials of
//! matrices, and factorization by trial division against enumerated monic
//! polynomials.

use std::fmt;

use super::field::{FieldElem, PrimeField};
use super::matrix::MatrixK;
use super::LinalgError;

/// Upper bound on the number of candidate divisors `factor_poly` will try.
pub const FACTOR_CANDIDATE_BUDGET: u64 = 1 << 24;

/// Coefficients lowest degree first; no trailing zeros. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyK {
    field: PrimeField,
    coeffs: Vec<FieldElem>,
}

impl PolyK {
    pub fn new(field: PrimeField, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyK { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        PolyK {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: PrimeField, c: FieldElem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x^d`
    pub fn monomial(field: PrimeField, d: usize) -> Self {
        let mut c = vec![FieldElem::ZERO; d + 1];
        c[d] = FieldElem::ONE;
        PolyK { field, coeffs: c }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElem::ONE)
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: FieldElem) -> Self {
        let k = self.field;
        Self::new(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn add(&self, other: &PolyK) -> Self {
        let k = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &PolyK, i: usize| p.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO);
        Self::new(k, (0..n).map(|i| k.add(get(self, i), get(other, i))).collect())
    }

    pub fn sub(&self, other: &PolyK) -> Self {
        let k = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &PolyK, i: usize| p.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO);
        Self::new(k, (0..n).map(|i| k.sub(get(self, i), get(other, i))).collect())
    }

    pub fn mul(&self, other: &PolyK) -> Self {
        let k = self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(k);
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.mul_add(out[i + j], a, b);
            }
        }
        Self::new(k, out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &PolyK) -> (PolyK, PolyK) {
        let k = self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = k.inv(divisor.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(k), self.clone());
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = k.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            let nc = k.neg(c);
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.mul_add(rem[i + j], nc, d);
            }
        }
        (Self::new(k, quot), Self::new(k, rem))
    }

    pub fn rem(&self, divisor: &PolyK) -> PolyK {
        self.divrem(divisor).1
    }

    /// Monic gcd together with Bézout cofactors: `s*self + t*other = g`.
    pub fn ext_gcd(&self, other: &PolyK) -> (PolyK, PolyK, PolyK) {
        let k = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero(k));
        let (mut t0, mut t1) = (Self::zero(k), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = k.inv(l).expect("nonzero");
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    pub fn gcd(&self, other: &PolyK) -> PolyK {
        self.ext_gcd(other).0
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let k = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| k.mul_add(c, acc, x))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &MatrixK) -> MatrixK {
        assert!(a.is_square());
        let n = a.rows();
        let id = MatrixK::identity(self.field, n);
        self.coeffs
            .iter()
            .rev()
            .fold(MatrixK::zeros(self.field, n, n), |acc, &c| {
                acc.mul(a).add_scaled(c, &id)
            })
    }
}

impl fmt::Debug for PolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c.value(), i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// The monic polynomial of least degree annihilating `a`, found as the first
/// linear dependence among `I, A, A², …`.
pub fn minimal_polynomial(a: &MatrixK) -> PolyK {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let k = a.field();
    let n = a.rows();
    // Echelon rows: (reduced vector, pivot, combination of powers giving it).
    let mut rows: Vec<(Vec<FieldElem>, usize, Vec<FieldElem>)> = Vec::new();
    let mut power = MatrixK::identity(k, n);
    for d in 0..=n {
        let mut vec = power.entries().to_vec();
        let mut combo = vec![FieldElem::ZERO; d + 1];
        combo[d] = FieldElem::ONE;
        for (rv, piv, rc) in &rows {
            let c = vec[*piv];
            if c.is_zero() {
                continue;
            }
            let nc = k.neg(c);
            for (x, &y) in vec.iter_mut().zip(rv) {
                *x = k.mul_add(*x, nc, y);
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = k.mul_add(*x, nc, y);
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            // combo · (I, A, …, A^d) = 0 with combo[d] = 1
            None => return PolyK::new(k, combo),
            Some(piv) => {
                let inv = k.inv(vec[piv]).expect("nonzero pivot");
                vec.iter_mut().for_each(|x| *x = k.mul(*x, inv));
                combo.iter_mut().for_each(|x| *x = k.mul(*x, inv));
                rows.push((vec, piv, combo));
            }
        }
        power = power.mul(a);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Factors a monic polynomial into distinct monic irreducibles with
/// multiplicities, in degree-then-lexicographic order of the factors.
///
/// Candidate divisors of degree `d` are enumerated by counting through their
/// lower coefficients with `c_0` varying fastest.
pub fn factor_poly(f: &PolyK) -> Result<Vec<(PolyK, usize)>, LinalgError> {
    let k = f.field();
    let deg = f.degree().unwrap_or(0);
    if deg == 0 || !f.is_monic() {
        return Err(LinalgError::NotFactorable(f.to_string()));
    }
    let p = k.modulus() as u64;
    let mut rest = f.clone();
    let mut out: Vec<(PolyK, usize)> = Vec::new();
    let mut tried: u64 = 0;
    let mut d = 1;
    loop {
        let rdeg = rest.degree().unwrap_or(0);
        if rdeg == 0 {
            break;
        }
        if rdeg < 2 * d {
            out.push((rest, 1));
            break;
        }
        let count = p.checked_pow(d as u32).unwrap_or(u64::MAX);
        if tried.saturating_add(count) > FACTOR_CANDIDATE_BUDGET {
            return Err(LinalgError::FactorBudget {
                degree: deg,
                modulus: p,
            });
        }
        tried += count;
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut m = idx;
            for _ in 0..d {
                coeffs.push(k.from_u64(m % p));
                m /= p;
            }
            coeffs.push(FieldElem::ONE);
            let cand = PolyK::new(k, coeffs);
            let mut mult = 0;
            loop {
                let (q, r) = rest.divrem(&cand);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
            if rest.degree().unwrap_or(0) < 2 * d {
                break;
            }
        }
        d += 1;
    }
    Ok(out)
}
