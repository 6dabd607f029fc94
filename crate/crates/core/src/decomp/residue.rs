//! Maps between `End_k(V)` and `Hom_R(M, V)` for a lift `(M, φ)` of `V`, and
//! recovery of the scalar behind an endomorphism of `M`.

use std::sync::Arc;

use crate::artin::{extension_chain, ArtinAlgebra, MatrixR, RingElem, SmallExtension};
use crate::catmod::{hom_basis, LiftWitness, NatTransform, RepModule, ResidueTransform};
use crate::linalg::MatrixK;

use super::DecompError;

/// `f ↦ f ∘ π_M`, i.e. `g_x = f_x · φ_x` on residues.
pub fn precompose_projection(f: &NatTransform, w: &LiftWitness) -> Result<ResidueTransform, DecompError> {
    if f.source() != &w.base || f.target() != &w.base {
        return Err(DecompError::NotEndomorphism);
    }
    let components = f
        .components()
        .iter()
        .zip(&w.phi)
        .map(|(fx, phi)| fx.residue().mul(phi))
        .collect();
    Ok(ResidueTransform::new(w.lift.clone(), w.base.clone(), components)?)
}

/// The unique `f` with `f ∘ π_M = g`, solved vertex by vertex from
/// `f_x · (φ_x · P_x) = g_x` where `P_x: R^{r_x} → k^{r_x}` is the residue
/// projection on the underlying k-spaces.
pub fn factor_through_projection(g: &ResidueTransform, w: &LiftWitness) -> Result<NatTransform, DecompError> {
    if g.source() != &w.lift || g.target() != &w.base {
        return Err(DecompError::Inconsistent("transform does not start at the lift".into()));
    }
    let n = w.lift.algebra().dim();
    let field = w.base.algebra().field();
    let mut components = Vec::with_capacity(w.phi.len());
    for (x, phi) in w.phi.iter().enumerate() {
        let r = w.lift.rank(x);
        let residue_projection = MatrixK::from_fn(
            field,
            r,
            r * n,
            |i, c| {
                if c == i * n {
                    field.one()
                } else {
                    field.zero()
                }
            },
        );
        let pi = phi.mul(&residue_projection);
        let full = g.full_k_matrix(x);
        // f π = g  ⇔  πᵀ fᵀ = gᵀ
        let f = pi
            .transpose()
            .solve_matrix(&full.transpose())
            .map_err(|_| DecompError::Inconsistent(format!("no preimage at vertex {x}")))?
            .transpose();
        if f.mul(&pi) != full {
            return Err(DecompError::Inconsistent(format!(
                "preimage at vertex {x} does not reproduce g"
            )));
        }
        components.push(MatrixR::embed(w.base.algebra(), &f));
    }
    Ok(NatTransform::new(w.base.clone(), w.base.clone(), components)?)
}

/// The `r ∈ R` with `f = μ_r`, for `f ∈ End_R(M)` where `(M, φ)` lifts a
/// base with `End_k(V) = k`.
///
/// Works down the chain of small extensions `R → R₀ → … → k`: the image of
/// `f` over `R₀` is `μ_{r₀}`; for any `r` over `r₀` the difference `f − μ_r`
/// has entries in `tR = k·t`, and dividing by `t` leaves an endomorphism of
/// the residue module, which must be `λ · id`. Then `f = μ_{r + λt}`.
pub fn express_as_scalar(f: &NatTransform, w: &LiftWitness) -> Result<RingElem, DecompError> {
    if f.source() != &w.lift || f.target() != &w.lift {
        return Err(DecompError::NotEndomorphism);
    }
    let end_dim = hom_basis(&w.base, &w.base)?.dim();
    if end_dim != 1 {
        return Err(DecompError::HypothesisViolated { end_dim });
    }
    let chain = extension_chain(w.lift.algebra())?;
    scalar_along_chain(&w.lift, f.components(), &chain, w.base.algebra())
}

fn scalar_along_chain(
    m: &RepModule,
    f: &[MatrixR],
    chain: &[SmallExtension],
    field_alg: &Arc<ArtinAlgebra>,
) -> Result<RingElem, DecompError> {
    let alg = m.algebra();
    let Some((step, rest)) = chain.split_first() else {
        return scalar_over_field(m, f);
    };
    let target = Arc::new(step.target.clone());
    let reduced = m.change_coefficients(&step.theta, &target);
    let reduced_f: Vec<MatrixR> = f.iter().map(|c| c.map_coords(&step.theta)).collect();
    let r0 = scalar_along_chain(&reduced, &reduced_f, rest, field_alg)?;
    let r = step.lift(&r0);

    let k = alg.field();
    let mut lambda = None;
    let mut quotient = Vec::with_capacity(f.len());
    for (x, fx) in f.iter().enumerate() {
        let g = fx.sub(&MatrixR::identity(alg, m.rank(x)).scale(alg, &r));
        let mut gk = MatrixK::zeros(k, g.rows(), g.cols());
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let c = step.divide_by_t(&g.entry(i, j)).ok_or_else(|| {
                    DecompError::NotScalar(format!("entry ({i},{j}) at vertex {x} is not a multiple of t"))
                })?;
                gk.set(i, j, c);
            }
        }
        quotient.push(gk);
    }
    // the t-coefficients form an endomorphism of the residue module
    let residue = Arc::new(m.residue_module(field_alg));
    let comps = quotient.iter().map(|q| MatrixR::embed(field_alg, q)).collect();
    let g = NatTransform::new(residue.clone(), residue, comps)
        .map_err(|_| DecompError::NotScalar("t-coefficients are not natural".into()))?;
    for (x, q) in g.components().iter().enumerate() {
        if m.rank(x) == 0 {
            continue;
        }
        let l = *lambda.get_or_insert(q.residue().get(0, 0));
        if q.residue() != MatrixK::identity(k, m.rank(x)).scale(l) {
            return Err(DecompError::NotScalar(format!(
                "t-coefficients at vertex {x} are not scalar"
            )));
        }
    }
    let lambda = lambda.unwrap_or(k.zero());
    Ok(alg.add(&r, &alg.scale(lambda, &step.t)))
}

fn scalar_over_field(m: &RepModule, f: &[MatrixR]) -> Result<RingElem, DecompError> {
    let alg = m.algebra();
    let k = alg.field();
    let lambda = (0..f.len())
        .find(|&x| m.rank(x) > 0)
        .map(|x| f[x].residue().get(0, 0))
        .unwrap_or(k.zero());
    for (x, fx) in f.iter().enumerate() {
        if fx.residue() != MatrixK::identity(k, m.rank(x)).scale(lambda) {
            return Err(DecompError::NotScalar(format!(
                "component at vertex {x} is not {lambda:?}·id"
            )));
        }
    }
    Ok(alg.embed(lambda))
}

/// Every `End` basis element of the lift, written as a scalar.
pub fn end_as_scalars(w: &LiftWitness) -> Result<Vec<RingElem>, DecompError> {
    let space = hom_basis(&w.lift, &w.lift)?;
    space.basis().iter().map(|f| express_as_scalar(f, w)).collect()
}
