//! Small extensions `θ: R → R₀ = R/tR` with `t` in the last nonzero power of
//! `m`, and the chain of them descending from `R` to `k`.

use crate::linalg::{FieldElem, MatrixK};

use super::{AlgebraError, ArtinAlgebra, RingElem};

#[derive(Clone, Debug)]
pub struct SmallExtension {
    pub source: ArtinAlgebra,
    pub target: ArtinAlgebra,
    /// `θ` on coordinates, shape `n₀ × n` (acts on column vectors).
    pub theta: MatrixK,
    /// A k-linear section of `θ`, shape `n × n₀`; not multiplicative.
    pub section: MatrixK,
    /// Generator of `ker θ`.
    pub t: RingElem,
    /// Index of the source basis vector dropped from the quotient basis.
    pub dropped: usize,
}

impl SmallExtension {
    pub fn apply(&self, a: &RingElem) -> RingElem {
        RingElem::from_coeffs(self.theta.mul_vec(a.coeffs()))
    }

    pub fn lift(&self, a: &RingElem) -> RingElem {
        RingElem::from_coeffs(self.section.mul_vec(a.coeffs()))
    }

    /// Writes `a` as `λ t`; `None` when `a ∉ span(t)`.
    pub fn divide_by_t(&self, a: &RingElem) -> Option<FieldElem> {
        // t has a leading 1 in the dropped slot
        let lambda = a.coeff(self.dropped);
        (self.source.scale(lambda, &self.t) == *a).then_some(lambda)
    }
}

/// Builds `R → R/tR` where `t` is the first echelon basis vector of the last
/// nonzero power of `m`.
pub fn small_extension(alg: &ArtinAlgebra) -> Result<SmallExtension, AlgebraError> {
    let n = alg.dim();
    if n < 2 {
        return Err(AlgebraError::LengthOne);
    }
    let k = alg.field();
    let last = (1..=n)
        .map(|e| alg.ideal_power_basis(e))
        .take_while(|b| !b.is_empty())
        .last()
        .expect("m is nonzero when n >= 2");
    let t = last[0].clone();
    let dropped = t
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("echelon vector is nonzero");
    debug_assert!(dropped >= 1 && t.coeff(dropped) == k.one());

    let kept: Vec<usize> = (0..n).filter(|&i| i != dropped).collect();
    let n0 = kept.len();
    // b_i ↦ b'_i for kept i; b_dropped ≡ −Σ_{l≠dropped} t_l b_l mod t
    let theta = MatrixK::from_fn(k, n0, n, |row, col| {
        if col == dropped {
            k.neg(t.coeff(kept[row]))
        } else if kept[row] == col {
            FieldElem::ONE
        } else {
            FieldElem::ZERO
        }
    });
    let section = MatrixK::from_fn(k, n, n0, |row, col| {
        if kept[col] == row {
            FieldElem::ONE
        } else {
            FieldElem::ZERO
        }
    });
    let table = kept
        .iter()
        .map(|&i| kept.iter().map(|&j| theta.mul_vec(alg.product_coords(i, j))).collect())
        .collect();
    let names = kept.iter().map(|&i| alg.names()[i].clone()).collect();
    let target = ArtinAlgebra::unchecked(k, names, table)?;
    Ok(SmallExtension {
        source: alg.clone(),
        target,
        theta,
        section,
        t,
        dropped,
    })
}

/// Small extensions from `R` down to `k`; empty when `R = k`.
pub fn extension_chain(alg: &ArtinAlgebra) -> Result<Vec<SmallExtension>, AlgebraError> {
    let mut chain = Vec::with_capacity(alg.dim().saturating_sub(1));
    let mut current = alg.clone();
    while current.dim() > 1 {
        let step = small_extension(&current)?;
        current = step.target.clone();
        chain.push(step);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// θ multiplicative, θ∘section = id, ker θ = span(t), m·t = 0, all checked exhaustively.
    fn check_extension(ext: &SmallExtension) {
        let (r, r0) = (&ext.source, &ext.target);
        r0.validate().unwrap();
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let (bi, bj) = (r.basis(i), r.basis(j));
                assert_eq!(ext.apply(&r.mul(&bi, &bj)), r0.mul(&ext.apply(&bi), &ext.apply(&bj)));
            }
        }
        assert!(ext.theta.mul(&ext.section).is_identity());
        let ker = ext.theta.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert_eq!(r.echelon(&[RingElem::from_coeffs(ker[0].clone())]), vec![ext.t.clone()]);
        for i in 1..r.dim() {
            assert!(r.mul(&r.basis(i), &ext.t).is_zero());
        }
    }

    #[test]
    fn dual_numbers_to_field() {
        let r = ArtinAlgebra::dual_numbers(k(3));
        let ext = small_extension(&r).unwrap();
        assert_eq!(ext.t, r.basis(1));
        assert_eq!(ext.target.dim(), 1);
        check_extension(&ext);
    }

    #[test]
    fn cube_truncation_drops_top_power() {
        let r = ArtinAlgebra::truncated_polynomial(k(2), 3, "e");
        let ext = small_extension(&r).unwrap();
        assert_eq!(ext.t, r.basis(2));
        assert_eq!(ext.target, ArtinAlgebra::truncated_polynomial(k(2), 2, "e"));
        check_extension(&ext);
    }

    #[test]
    fn square_zero_plane_drops_first_generator() {
        let r = ArtinAlgebra::square_zero(k(5), &["x", "y"]);
        let ext = small_extension(&r).unwrap();
        assert_eq!(ext.t, r.basis(1));
        assert_eq!(ext.target, ArtinAlgebra::square_zero(k(5), &["y"]));
        check_extension(&ext);
    }

    #[test]
    fn field_has_no_small_extension() {
        let r = ArtinAlgebra::ground_field(k(7));
        assert!(matches!(small_extension(&r), Err(AlgebraError::LengthOne)));
        assert!(extension_chain(&r).unwrap().is_empty());
    }

    #[test]
    fn chains_compose_to_residue() {
        for r in [
            ArtinAlgebra::dual_numbers(k(2)),
            ArtinAlgebra::truncated_polynomial(k(3), 3, "e"),
            ArtinAlgebra::truncated_polynomial(k(2), 5, "e"),
            ArtinAlgebra::square_zero(k(3), &["x", "y", "z"]),
        ] {
            let chain = extension_chain(&r).unwrap();
            assert_eq!(chain.len(), r.length() - 1);
            let mut lens: Vec<usize> = chain.iter().map(|e| e.target.length()).collect();
            lens.insert(0, r.length());
            assert!(lens.windows(2).all(|w| w[0] == w[1] + 1));
            let composed = chain
                .iter()
                .fold(MatrixK::identity(r.field(), r.dim()), |acc, e| e.theta.mul(&acc));
            let residue = MatrixK::from_fn(r.field(), 1, r.dim(), |_, j| {
                if j == 0 {
                    FieldElem::ONE
                } else {
                    FieldElem::ZERO
                }
            });
            assert_eq!(composed, residue);
            chain.iter().for_each(check_extension);
        }
    }

    #[test]
    fn non_monomial_socle_element() {
        // k[x,y]/(x^2 - y^2, xy) over F_3: basis 1, x, y, s = x^2 = y^2; m^2 = span(s)
        let f = k(3);
        let n = 4;
        let mut t = vec![vec![vec![FieldElem::ZERO; n]; n]; n];
        for i in 0..n {
            t[0][i][i] = FieldElem::ONE;
            t[i][0][i] = FieldElem::ONE;
        }
        t[1][1][3] = FieldElem::ONE;
        t[2][2][3] = FieldElem::ONE;
        let r = ArtinAlgebra::new(f, vec!["1".into(), "x".into(), "y".into(), "s".into()], t).unwrap();
        let chain = extension_chain(&r).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[0].t, r.basis(3));
        chain.iter().for_each(check_extension);
    }
}
