use std::collections::VecDeque;
use std::sync::Arc;

use crate::catmod::{direct_sum, hom_basis, HomSpace, NatTransform, RepModule};
use crate::linalg::{factor_poly, minimal_polynomial, FieldElem};
use crate::rng::XorShift64Star;

use super::split::{fitting_split, minpoly_split, Span, Split, Summand};
use super::DecompError;

/// Random combinations of `End` basis elements tried before giving up on a summand.
pub const RANDOM_SPLIT_ATTEMPTS: usize = 64;

/// What is known about the endomorphism algebra of a summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// `End(S) = {μ_r} ≅ R`.
    ScalarRing,
    /// `End(S)` is local (so `S` is indecomposable) but larger than `R`.
    LocalUnknown,
    /// No split was found and locality could not be shown.
    Undecided,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::ScalarRing => "scalar_ring",
            Certificate::LocalUnknown => "local_unknown",
            Certificate::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: Arc<RepModule>,
    pub summands: Vec<Summand>,
    pub certificates: Vec<Certificate>,
    /// `dim_k End(S)` per summand.
    pub end_dims: Vec<usize>,
}

impl Decomposition {
    pub fn fully_certified(&self) -> bool {
        self.certificates.iter().all(|&c| c == Certificate::ScalarRing)
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// `⊕ S_i → M` assembled from the summand inclusions.
    pub fn reassembly(&self) -> Result<NatTransform, DecompError> {
        if self.summands.is_empty() {
            return Ok(NatTransform::identity(self.module.clone()));
        }
        let modules: Vec<Arc<RepModule>> = self.summands.iter().map(|s| s.module.clone()).collect();
        let (sum, _, projections) = direct_sum(&modules)?;
        let mut total = NatTransform::zero(sum, self.module.clone());
        for (s, p) in self.summands.iter().zip(&projections) {
            total = total.add(&s.inclusion.compose(p)?)?;
        }
        Ok(total)
    }
}

fn random_combination(space: &HomSpace, rng: &mut XorShift64Star) -> Option<NatTransform> {
    let k = space.source().algebra().field();
    let coeffs: Vec<FieldElem> = (0..space.dim())
        .map(|_| k.from_u64(rng.below(k.modulus() as u64)))
        .collect();
    coeffs.iter().any(|c| !c.is_zero()).then(|| space.combination(&coeffs))
}

fn try_split(m: &Arc<RepModule>, space: &HomSpace, rng: &mut XorShift64Star) -> Result<Option<Split>, DecompError> {
    for f in space.basis() {
        if let Some(s) = minpoly_split(m, f)? {
            return Ok(Some(s));
        }
    }
    for f in space.basis() {
        if let Some(s) = fitting_split(m, f)? {
            return Ok(Some(s));
        }
    }
    for _ in 0..RANDOM_SPLIT_ATTEMPTS {
        let Some(f) = random_combination(space, rng) else {
            continue;
        };
        if let Some(s) = minpoly_split(m, &f)? {
            return Ok(Some(s));
        }
        if let Some(s) = fitting_split(m, &f)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Shows `End` is local with residue field `k`: the elements `a_i − λ_i`
/// (with `λ_i` the only eigenvalue of `a_i`) span a nilpotent two-sided
/// ideal of codimension one.
fn end_is_local(space: &HomSpace) -> Result<bool, DecompError> {
    let m = space.source();
    let k = m.algebra().field();
    let d = space.dim();
    let id = NatTransform::identity(m.clone());
    let mut radical = Vec::with_capacity(d);
    let mut span = Span::new(k);
    for a in space.basis() {
        let mp = minimal_polynomial(&a.total_k_matrix());
        let factors = match factor_poly(&mp) {
            Ok(f) => f,
            Err(_) => return Ok(false),
        };
        let [(q, _)] = factors.as_slice() else {
            return Ok(false);
        };
        if q.degree() != Some(1) {
            return Ok(false);
        }
        // q = x − λ
        let lambda = k.neg(q.coeffs()[0]);
        let u = a.sub(&id.scale_k(lambda))?;
        let coords = space
            .coordinates(&u)
            .ok_or_else(|| DecompError::Inconsistent("End is not closed under subtraction".into()))?;
        if span.insert(&coords) {
            radical.push(u);
        }
    }
    if radical.len() + 1 != d {
        return Ok(false);
    }
    let in_radical = |f: &NatTransform| -> Result<bool, DecompError> {
        let c = space
            .coordinates(f)
            .ok_or_else(|| DecompError::Inconsistent("End is not closed under composition".into()))?;
        Ok(span.contains(&c))
    };
    for u in &radical {
        for b in space.basis() {
            if !in_radical(&u.compose(b)?)? || !in_radical(&b.compose(u)?)? {
                return Ok(false);
            }
        }
    }
    let mut power = radical.clone();
    while !power.is_empty() {
        let mut next_span = Span::new(k);
        let mut next = Vec::new();
        for u in &power {
            for v in &radical {
                let w = u.compose(v)?;
                let c = space.coordinates(&w).expect("closed under composition");
                if next_span.insert(&c) {
                    next.push(w);
                }
            }
        }
        if next.len() >= power.len() {
            return Ok(false);
        }
        power = next;
    }
    Ok(true)
}

/// Splits `m` into summands by a worklist: each summand is certified scalar
/// if `dim End = ℓ(R)`, otherwise split by the first idempotent found among
/// minimal-polynomial splits, Fitting splits and random combinations.
/// Summands are ordered by total rank, then rank vector, then discovery order.
pub fn decompose(m: &Arc<RepModule>, seed: u64) -> Result<Decomposition, DecompError> {
    let mut rng = XorShift64Star::new(seed);
    let length = m.algebra().length();
    let mut queue = VecDeque::new();
    if !m.is_zero() {
        queue.push_back(Summand::whole(m.clone()));
    }
    let mut done: Vec<(Summand, Certificate, usize)> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let space = hom_basis(&s.module, &s.module)?;
        if space.dim() == length {
            done.push((s, Certificate::ScalarRing, length));
            continue;
        }
        match try_split(&s.module, &space, &mut rng)? {
            Some(split) => {
                for inner in &split.summands {
                    queue.push_back(s.nest(inner));
                }
            }
            None => {
                let cert = if end_is_local(&space)? {
                    Certificate::LocalUnknown
                } else {
                    Certificate::Undecided
                };
                done.push((s, cert, space.dim()));
            }
        }
    }
    let mut indexed: Vec<(usize, (Summand, Certificate, usize))> = done.into_iter().enumerate().collect();
    indexed.sort_by(|(i, (a, _, _)), (j, (b, _, _))| {
        (a.module.total_rank(), a.module.ranks(), i).cmp(&(b.module.total_rank(), b.module.ranks(), j))
    });
    let mut out = Decomposition {
        module: m.clone(),
        summands: Vec::with_capacity(indexed.len()),
        certificates: Vec::with_capacity(indexed.len()),
        end_dims: Vec::with_capacity(indexed.len()),
    };
    for (_, (s, c, d)) in indexed {
        out.summands.push(s);
        out.certificates.push(c);
        out.end_dims.push(d);
    }
    Ok(out)
}
