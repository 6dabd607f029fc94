use std::sync::Arc;

use crate::artin::{ArtinAlgebra, MatrixR, RingElem};
use crate::linalg::{FieldElem, MatrixK, PrimeField};

use super::{ModuleError, NatTransform, RepModule, ResidueTransform};

/// A k-basis of `Hom_R(M, N)` obtained as the kernel of the naturality system.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Arc<RepModule>,
    target: Arc<RepModule>,
    basis: Vec<NatTransform>,
    /// Unknown index carrying the leading 1 of each basis vector.
    free: Vec<usize>,
}

impl HomSpace {
    pub fn source(&self) -> &Arc<RepModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RepModule> {
        &self.target
    }

    pub fn basis(&self) -> &[NatTransform] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis; `None` if `f` is not in the span.
    pub fn coordinates(&self, f: &NatTransform) -> Option<Vec<FieldElem>> {
        let flat = f.flatten();
        let coeffs: Vec<FieldElem> = self.free.iter().map(|&u| flat[u]).collect();
        (self.combination(&coeffs).flatten() == flat).then_some(coeffs)
    }

    pub fn combination(&self, coeffs: &[FieldElem]) -> NatTransform {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut components: Vec<MatrixR> = (0..self.source.ranks().len())
            .map(|x| MatrixR::zeros(self.source.algebra(), self.target.rank(x), self.source.rank(x)))
            .collect();
        for (c, f) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (acc, m) in components.iter_mut().zip(f.components()) {
                let layers = acc
                    .layers()
                    .iter()
                    .zip(m.layers())
                    .map(|(a, b)| a.add_scaled(*c, b))
                    .collect();
                *acc = MatrixR::from_layers(layers);
            }
        }
        NatTransform::unchecked(self.source.clone(), self.target.clone(), components)
            .expect("combination of parallel transforms")
    }
}

/// Multiplication by `v` on coordinate vectors: entry `[s][p]` is the
/// coefficient of `b_s` in `v · b_p`.
fn mult_matrix(alg: &ArtinAlgebra, v: &RingElem) -> MatrixK {
    let n = alg.dim();
    let mut out = MatrixK::zeros(alg.field(), n, n);
    for (q, c) in v.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = out.add_scaled(*c, alg.left_mult_matrix(q));
        }
    }
    out
}

/// Dense equation rows, one `Vec` per equation, accumulated in place.
struct System {
    field: PrimeField,
    unknowns: usize,
    rows: Vec<Vec<FieldElem>>,
}

impl System {
    fn new(field: PrimeField, unknowns: usize) -> Self {
        System {
            field,
            unknowns,
            rows: Vec::new(),
        }
    }

    fn push_row(&mut self) -> usize {
        self.rows.push(vec![FieldElem::ZERO; self.unknowns]);
        self.rows.len() - 1
    }

    fn add(&mut self, row: usize, unknown: usize, c: FieldElem) {
        let slot = &mut self.rows[row][unknown];
        *slot = self.field.add(*slot, c);
    }

    /// Kernel basis together with the free unknown of each vector.
    fn kernel(&self) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
        if self.rows.is_empty() {
            let basis = (0..self.unknowns)
                .map(|u| {
                    let mut v = vec![FieldElem::ZERO; self.unknowns];
                    v[u] = FieldElem::ONE;
                    v
                })
                .collect();
            return (basis, (0..self.unknowns).collect());
        }
        let a = MatrixK::from_elems(self.field, self.rows.len(), self.unknowns, self.rows.concat());
        let pivots = a.rref().pivots;
        let free = (0..self.unknowns).filter(|u| !pivots.contains(u)).collect();
        (a.kernel_basis(), free)
    }
}

/// Solves `f_y · M(a) = N(a) · f_x` for all arrows, with every entry of every
/// component expanded in the k-basis of `R`.
pub fn hom_basis(source: &Arc<RepModule>, target: &Arc<RepModule>) -> Result<HomSpace, ModuleError> {
    if !source.same_shape_context(target) {
        return Err(ModuleError::ContextMismatch);
    }
    let alg = source.algebra();
    let n = alg.dim();
    let field = alg.field();
    let nv = source.ranks().len();

    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for x in 0..nv {
        offsets.push(total);
        total += target.rank(x) * source.rank(x) * n;
    }
    // unknown for coordinate p of f_x[i][j]
    let var = |x: usize, i: usize, j: usize, p: usize| offsets[x] + (i * source.rank(x) + j) * n + p;

    let mut sys = System::new(field, total);
    for (ai, a) in source.quiver().arrows().iter().enumerate() {
        let (x, y) = (a.source, a.target);
        let (m_a, n_a) = (source.map(ai), target.map(ai));
        let m_mult: Vec<Vec<MatrixK>> = (0..m_a.rows())
            .map(|l| (0..m_a.cols()).map(|j| mult_matrix(alg, &m_a.entry(l, j))).collect())
            .collect();
        let n_mult: Vec<Vec<MatrixK>> = (0..n_a.rows())
            .map(|i| (0..n_a.cols()).map(|l| mult_matrix(alg, &n_a.entry(i, l))).collect())
            .collect();
        for i in 0..target.rank(y) {
            for j in 0..source.rank(x) {
                for s in 0..n {
                    let row = sys.push_row();
                    for l in 0..source.rank(y) {
                        let mv = &m_mult[l][j];
                        for p in 0..n {
                            sys.add(row, var(y, i, l, p), mv.get(s, p));
                        }
                    }
                    for l in 0..target.rank(x) {
                        let mv = &n_mult[i][l];
                        for p in 0..n {
                            sys.add(row, var(x, l, j, p), field.neg(mv.get(s, p)));
                        }
                    }
                }
            }
        }
    }

    let (kernel, free) = sys.kernel();
    let mut basis = Vec::with_capacity(kernel.len());
    for v in kernel {
        let components = (0..nv)
            .map(|x| {
                let (r, c) = (target.rank(x), source.rank(x));
                let layers = (0..n)
                    .map(|p| MatrixK::from_fn(field, r, c, |i, j| v[var(x, i, j, p)]))
                    .collect();
                MatrixR::from_layers(layers)
            })
            .collect();
        basis.push(NatTransform::unchecked(source.clone(), target.clone(), components)?);
    }
    Ok(HomSpace {
        source: source.clone(),
        target: target.clone(),
        basis,
        free,
    })
}

/// `Hom_R(M, V)` for `M` over `R` and `V` over `k`, where `R` acts on `V`
/// through the residue. Each map is an unknown k-matrix on the full k-space
/// `R^{r_x}`, constrained to kill `m · R^{r_x}` and to be natural.
pub fn hom_to_residue_target(
    source: &Arc<RepModule>,
    target: &Arc<RepModule>,
) -> Result<Vec<ResidueTransform>, ModuleError> {
    if !target.algebra().is_field()
        || source.quiver() != target.quiver()
        || source.algebra().field() != target.algebra().field()
    {
        return Err(ModuleError::ContextMismatch);
    }
    let alg = source.algebra();
    let n = alg.dim();
    let field = alg.field();
    let nv = source.ranks().len();

    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for x in 0..nv {
        offsets.push(total);
        total += target.rank(x) * source.rank(x) * n;
    }
    let width = |x: usize| source.rank(x) * n;
    let var = |x: usize, i: usize, c: usize| offsets[x] + i * width(x) + c;

    let mut sys = System::new(field, total);
    // R-linearity into an m-annihilated target: G_x · (b_s on R^{r_x}) = 0 for s ≥ 1
    for x in 0..nv {
        for s in 1..n {
            let act = alg.left_mult_matrix(s);
            for i in 0..target.rank(x) {
                for j in 0..source.rank(x) {
                    for col in 0..n {
                        let row = sys.push_row();
                        for d in 0..n {
                            let c = act.get(d, col);
                            if !c.is_zero() {
                                sys.add(row, var(x, i, j * n + d), c);
                            }
                        }
                    }
                }
            }
        }
    }
    // naturality: G_y · K(M(a)) = V(a) · G_x
    for (ai, a) in source.quiver().arrows().iter().enumerate() {
        let (x, y) = (a.source, a.target);
        let km = source.map(ai).k_matrix(alg);
        let va = target.map(ai).residue();
        for i in 0..target.rank(y) {
            for col in 0..width(x) {
                let row = sys.push_row();
                for d in 0..width(y) {
                    let c = km.get(d, col);
                    if !c.is_zero() {
                        sys.add(row, var(y, i, d), c);
                    }
                }
                for l in 0..target.rank(x) {
                    let c = va.get(i, l);
                    if !c.is_zero() {
                        sys.add(row, var(x, l, col), field.neg(c));
                    }
                }
            }
        }
    }

    sys.kernel()
        .0
        .into_iter()
        .map(|v| {
            let components = (0..nv)
                .map(|x| MatrixK::from_fn(field, target.rank(x), source.rank(x), |i, j| v[var(x, i, j * n)]))
                .collect();
            ResidueTransform::new(source.clone(), target.clone(), components)
        })
        .collect()
}
