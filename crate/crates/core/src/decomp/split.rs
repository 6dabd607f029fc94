use std::sync::Arc;

use crate::artin::MatrixR;
use crate::catmod::{NatTransform, RepModule};
use crate::linalg::{factor_poly, minimal_polynomial, FieldElem, MatrixK, PolyK, PrimeField};

use super::DecompError;

/// A direct summand `S` of an ambient module with `projection ∘ inclusion = id_S`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Arc<RepModule>,
    pub inclusion: NatTransform,
    pub projection: NatTransform,
}

impl Summand {
    pub fn whole(module: Arc<RepModule>) -> Self {
        Summand {
            inclusion: NatTransform::identity(module.clone()),
            projection: NatTransform::identity(module.clone()),
            module,
        }
    }

    /// The idempotent `ι ∘ π` of the ambient module.
    pub fn idempotent(&self) -> NatTransform {
        self.inclusion
            .compose(&self.projection)
            .expect("composable by construction")
    }

    /// Reads a summand of this summand as a summand of the ambient module.
    pub fn nest(&self, inner: &Summand) -> Summand {
        Summand {
            module: inner.module.clone(),
            inclusion: self.inclusion.compose(&inner.inclusion).expect("composable"),
            projection: inner.projection.compose(&self.projection).expect("composable"),
        }
    }
}

/// A decomposition of a module into at least two nonzero summands.
#[derive(Clone, Debug)]
pub struct Split {
    pub summands: Vec<Summand>,
    /// Orthogonal idempotents summing to the identity, one per summand.
    pub idempotents: Vec<NatTransform>,
}

/// Incrementally maintained echelon basis of a subspace of `k^dim`.
pub(crate) struct Span {
    field: PrimeField,
    rows: Vec<(Vec<FieldElem>, usize)>,
}

impl Span {
    pub(crate) fn new(field: PrimeField) -> Self {
        Span {
            field,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let k = self.field;
        let mut v = v.to_vec();
        for (row, piv) in &self.rows {
            let c = v[*piv];
            if !c.is_zero() {
                let nc = k.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = k.mul_add(*x, nc, y);
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Adds `v`; false when it was already in the span.
    pub(crate) fn insert(&mut self, v: &[FieldElem]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(r[piv]).expect("nonzero pivot");
        r.iter_mut().for_each(|x| *x = self.field.mul(*x, inv));
        self.rows.push((r, piv));
        true
    }
}

/// Turns a vertex-wise direct-sum decomposition of the underlying k-spaces
/// into free summands. `parts[j][x]` spans part `j` at vertex `x`; every part
/// must be an `R`-submodule stable under all arrows.
///
/// A free basis of each part is found by lifting a basis of `W / mW`.
pub(crate) fn rebase(
    ambient: &Arc<RepModule>,
    parts: &[Vec<Vec<Vec<FieldElem>>>],
) -> Result<Vec<Summand>, DecompError> {
    let alg = ambient.algebra();
    let k = alg.field();
    let n = alg.dim();
    let nv = ambient.ranks().len();

    // inclusions[j][x]
    let mut inclusions: Vec<Vec<MatrixR>> = vec![Vec::with_capacity(nv); parts.len()];
    let mut projections: Vec<Vec<MatrixR>> = vec![Vec::with_capacity(nv); parts.len()];
    for x in 0..nv {
        let r = ambient.rank(x);
        let actions: Vec<MatrixK> = (1..n)
            .map(|s| MatrixR::identity(alg, r).scale(alg, &alg.basis(s)).k_matrix(alg))
            .collect();
        let mut stacked = MatrixR::zeros(alg, r, 0);
        let mut widths = Vec::with_capacity(parts.len());
        for (j, part) in parts.iter().enumerate() {
            let w = &part[x];
            let mut span = Span::new(k);
            for v in w {
                for act in &actions {
                    span.insert(&act.mul_vec(v));
                }
            }
            let echelon = if w.is_empty() {
                Vec::new()
            } else {
                let m = MatrixK::from_elems(k, w.len(), r * n, w.concat()).rref();
                (0..m.rank).map(|i| m.matrix.row(i).to_vec()).collect::<Vec<_>>()
            };
            let mut gens = Vec::new();
            for v in &echelon {
                if span.insert(v) {
                    gens.push(v.clone());
                }
            }
            if gens.len() * n != echelon.len() {
                return Err(DecompError::Inconsistent(format!(
                    "part of dimension {} at vertex {x} is not free over a ring of length {n}",
                    echelon.len()
                )));
            }
            let inc = MatrixR::from_kvec_columns(alg, r, &gens);
            stacked = stacked.hstack(&inc);
            widths.push(gens.len());
            inclusions[j].push(inc);
        }
        let inv = stacked
            .inverse(alg)
            .map_err(|_| DecompError::Inconsistent(format!("parts do not span vertex {x}")))?;
        let mut off = 0;
        for (j, &w) in widths.iter().enumerate() {
            projections[j].push(inv.submatrix(off..off + w, 0..r));
            off += w;
        }
    }

    let mut out = Vec::with_capacity(parts.len());
    for (inc, proj) in inclusions.into_iter().zip(projections) {
        let ranks: Vec<usize> = inc.iter().map(|m| m.cols()).collect();
        let mut maps = Vec::with_capacity(ambient.quiver().arrows().len());
        for (ai, a) in ambient.quiver().arrows().iter().enumerate() {
            let pushed = ambient.map(ai).mul(alg, &inc[a.source]);
            let induced = proj[a.target].mul(alg, &pushed);
            if inc[a.target].mul(alg, &induced) != pushed {
                return Err(DecompError::Inconsistent(format!(
                    "part is not stable under arrow {}",
                    a.label
                )));
            }
            maps.push(induced);
        }
        let module = Arc::new(RepModule::new(alg.clone(), ambient.quiver().clone(), ranks, maps)?);
        out.push(Summand {
            inclusion: NatTransform::new(module.clone(), ambient.clone(), inc)?,
            projection: NatTransform::new(ambient.clone(), module.clone(), proj)?,
            module,
        });
    }
    Ok(out)
}

fn check_endomorphism(m: &Arc<RepModule>, f: &NatTransform) -> Result<(), DecompError> {
    if f.source() != m || f.target() != m {
        return Err(DecompError::NotEndomorphism);
    }
    Ok(())
}

fn split_from_parts(m: &Arc<RepModule>, parts: &[Vec<Vec<Vec<FieldElem>>>]) -> Result<Split, DecompError> {
    let summands = rebase(m, parts)?;
    let idempotents = summands.iter().map(Summand::idempotent).collect();
    Ok(Split { summands, idempotents })
}

/// `M = ker f^N ⊕ im f^N` with `N` the k-dimension of `M`; `None` when one
/// side is zero.
pub fn fitting_split(m: &Arc<RepModule>, f: &NatTransform) -> Result<Option<Split>, DecompError> {
    check_endomorphism(m, f)?;
    let alg = m.algebra();
    let exp = m.total_dim_k().max(1) as u64;
    let mut kernel = Vec::with_capacity(m.ranks().len());
    let mut image = Vec::with_capacity(m.ranks().len());
    for c in f.components() {
        let g = c.k_matrix(alg).pow(exp);
        kernel.push(g.kernel_basis());
        image.push(g.column_space());
    }
    let dim = |part: &Vec<Vec<Vec<FieldElem>>>| part.iter().map(Vec::len).sum::<usize>();
    if dim(&kernel) == 0 || dim(&image) == 0 {
        return Ok(None);
    }
    split_from_parts(m, &[kernel, image]).map(Some)
}

/// `p(f)` by Horner's rule, over `R`.
fn eval_at(poly: &PolyK, f: &NatTransform) -> NatTransform {
    let id = NatTransform::identity(f.source().clone());
    let mut acc = NatTransform::zero(f.source().clone(), f.target().clone());
    for &c in poly.coeffs().iter().rev() {
        acc = acc
            .compose(f)
            .expect("endomorphism")
            .add(&id.scale_k(c))
            .expect("parallel");
    }
    acc
}

/// Splits along the coprime factorization `∏ q_i^{e_i}` of the minimal
/// polynomial of `f`, using the idempotents `e_i = s_i Q_i mod m_f` from
/// `s_i Q_i + t_i q_i^{e_i} = 1`, `Q_i = m_f / q_i^{e_i}`. `None` when the
/// minimal polynomial is a prime power or cannot be factored within budget.
pub fn minpoly_split(m: &Arc<RepModule>, f: &NatTransform) -> Result<Option<Split>, DecompError> {
    check_endomorphism(m, f)?;
    if m.is_zero() {
        return Ok(None);
    }
    let mf = minimal_polynomial(&f.total_k_matrix());
    let Ok(factors) = factor_poly(&mf) else {
        return Ok(None);
    };
    if factors.len() < 2 {
        return Ok(None);
    }
    let alg = m.algebra();
    let mut idempotents = Vec::with_capacity(factors.len());
    for (q, e) in &factors {
        let prime_power = q.pow(*e);
        let (cofactor, rem) = mf.divrem(&prime_power);
        debug_assert!(rem.is_zero());
        let (g, s, _) = cofactor.ext_gcd(&prime_power);
        if g.degree() != Some(0) {
            return Err(DecompError::Inconsistent(
                "factors of a minimal polynomial are not coprime".into(),
            ));
        }
        idempotents.push(eval_at(&s.mul(&cofactor).rem(&mf), f));
    }
    let mut total = NatTransform::zero(m.clone(), m.clone());
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let prod = ei.compose(ej)?;
            let ok = if i == j { prod == *ei } else { prod.is_zero() };
            if !ok {
                return Err(DecompError::Inconsistent(format!(
                    "idempotents {i} and {j} are not orthogonal"
                )));
            }
        }
        total = total.add(ei)?;
    }
    if !total.is_identity() {
        return Err(DecompError::Inconsistent(
            "idempotents do not sum to the identity".into(),
        ));
    }
    let parts: Vec<Vec<Vec<Vec<FieldElem>>>> = idempotents
        .iter()
        .map(|e| e.components().iter().map(|c| c.k_matrix(alg).column_space()).collect())
        .collect();
    let summands = rebase(m, &parts)?;
    Ok(Some(Split { summands, idempotents }))
}
