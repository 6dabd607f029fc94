//! Randomized lift witnesses and the checks run on each of them.
//!
//! A witness is a sum of interval modules over `1 → … → n` (`n ≤ 5`, `p ∈
//! {2, 3, 5}`), moved by a random change of basis `g`, together with a lift
//! over one of four local rings: the trivial lift of the unmoved sum with
//! random `m`-valued entries added to its arrow matrices, and `φ = g`.
//! Instance `i` draws everything from its own seed, so results do not depend
//! on scheduling.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::artin::{ArtinAlgebra, MatrixR};
use crate::catmod::{
    direct_sum, hom_basis, hom_to_residue_target, standard, LiftWitness, NatTransform, QuiverPresentation, RepModule,
};
use crate::decomp::{
    decompose, end_algebra, express_as_scalar, factor_through_projection, find_isomorphism, precompose_projection,
    verify_theorem, DecompError, Verdict,
};
use crate::linalg::{MatrixK, PrimeField};
use crate::rng::XorShift64Star;

pub const DEFAULT_BATTERY_SIZE: usize = 200;
pub const PRIMES: [u64; 3] = [2, 3, 5];
pub const MAX_VERTICES: usize = 5;
pub const MAX_INTERVALS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Field,
    DualNumbers,
    TruncatedCubic,
    SquareZero,
}

impl RingKind {
    pub const ALL: [RingKind; 4] = [
        RingKind::Field,
        RingKind::DualNumbers,
        RingKind::TruncatedCubic,
        RingKind::SquareZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Field => "k",
            RingKind::DualNumbers => "k[e]/(e^2)",
            RingKind::TruncatedCubic => "k[e]/(e^3)",
            RingKind::SquareZero => "k[x,y]/(x^2,xy,y^2)",
        }
    }

    pub fn algebra(self, k: PrimeField) -> ArtinAlgebra {
        match self {
            RingKind::Field => ArtinAlgebra::ground_field(k),
            RingKind::DualNumbers => ArtinAlgebra::dual_numbers(k),
            RingKind::TruncatedCubic => ArtinAlgebra::truncated_polynomial(k, 3, "e"),
            RingKind::SquareZero => ArtinAlgebra::square_zero(k, &["x", "y"]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatteryWitness {
    pub index: usize,
    pub seed: u64,
    pub p: u64,
    pub n: usize,
    pub ring: RingKind,
    /// 1-based inclusive supports of the base summands.
    pub intervals: Vec<(usize, usize)>,
    pub witness: LiftWitness,
}

/// splitmix64 of the battery seed and the instance index.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_invertible(k: PrimeField, n: usize, rng: &mut XorShift64Star) -> MatrixK {
    loop {
        let data = (0..n * n).map(|_| k.from_u64(rng.below(k.modulus() as u64))).collect();
        let g = MatrixK::from_elems(k, n, n, data);
        if g.is_invertible() {
            return g;
        }
    }
}

pub fn generate(seed: u64, index: usize) -> BatteryWitness {
    let seed = instance_seed(seed, index);
    let mut rng = XorShift64Star::new(seed);
    let p = PRIMES[rng.below(PRIMES.len() as u64) as usize];
    let k = PrimeField::new(p).expect("battery primes are prime");
    let n = rng.range(1, MAX_VERTICES);
    let ring = RingKind::ALL[rng.below(4) as usize];
    let intervals: Vec<(usize, usize)> = (0..rng.range(1, MAX_INTERVALS))
        .map(|_| {
            let b = rng.range(1, n);
            (b, rng.range(b, n))
        })
        .collect();

    let parts: Vec<Arc<RepModule>> = intervals
        .iter()
        .map(|&(b, d)| Arc::new(standard::interval(k, n, b, d)))
        .collect();
    let (sum, _, _) = direct_sum(&parts).expect("intervals share a context");
    let kalg = Arc::new(ArtinAlgebra::ground_field(k));
    let quiver = Arc::new(QuiverPresentation::linear(n));
    let sum = RepModule::over_field(kalg.clone(), quiver.clone(), sum.ranks().to_vec(), sum.k_maps())
        .expect("sum of intervals is valid");

    let g: Vec<MatrixK> = sum.ranks().iter().map(|&r| random_invertible(k, r, &mut rng)).collect();
    let g_embedded: Vec<MatrixR> = g.iter().map(|m| MatrixR::embed(&kalg, m)).collect();
    let base = sum.conjugate(&g_embedded).expect("g is invertible");

    let alg = Arc::new(ring.algebra(k));
    let trivial = sum.base_extend(&alg);
    let maps = trivial
        .maps()
        .iter()
        .map(|m| {
            let mut m = m.clone();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if alg.dim() > 1 && rng.coin() {
                        let mut coeffs = vec![0i64; alg.dim()];
                        for c in coeffs.iter_mut().skip(1) {
                            *c = rng.below(p) as i64;
                        }
                        let entry = alg.add(&m.entry(i, j), &alg.elem(&coeffs));
                        m.set_entry(i, j, &entry);
                    }
                }
            }
            m
        })
        .collect();
    let lift = RepModule::new(alg, quiver, trivial.ranks().to_vec(), maps).expect("A_n has no relations");
    let witness = LiftWitness::new(Arc::new(lift), Arc::new(base), g).expect("g intertwines the residues");
    BatteryWitness {
        index,
        seed,
        p,
        n,
        ring,
        intervals,
        witness,
    }
}

#[derive(Clone, Debug)]
pub struct BatteryOutcome {
    pub index: usize,
    pub seed: u64,
    pub p: u64,
    pub n: usize,
    pub ring: RingKind,
    pub intervals: Vec<(usize, usize)>,
    pub ring_length: usize,
    pub base_end_dim: usize,
    /// `dim_k Hom_R(M, V)`.
    pub residue_hom_dim: usize,
    /// Both composites of the residue correspondence are identities on bases.
    pub round_trip: bool,
    /// For bases with `End = k`: every `End_R(M)` basis element is `μ_r` for
    /// the recovered `r`, and `dim End_R(M) = ℓ(R)`.
    pub scalar_check: Option<bool>,
    pub lift_end_dim: usize,
    pub verdict: Verdict,
    pub base_summands: usize,
    pub lift_summands: Option<usize>,
    /// Lift summands for seeds 1 and 2 agree up to isomorphism.
    pub ks_stable: bool,
}

fn same_iso_classes(a: &[Arc<RepModule>], b: &[Arc<RepModule>], rng: &mut XorShift64Star) -> Result<bool, DecompError> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut found = false;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && find_isomorphism(x, y, rng)?.is_some() {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn evaluate(bw: &BatteryWitness) -> Result<BatteryOutcome, DecompError> {
    let w = &bw.witness;
    let end_v = hom_basis(&w.base, &w.base)?;
    let homs = hom_to_residue_target(&w.lift, &w.base)?;
    let mut round_trip = true;
    for f in end_v.basis() {
        round_trip &= factor_through_projection(&precompose_projection(f, w)?, w)? == *f;
    }
    for g in &homs {
        round_trip &= precompose_projection(&factor_through_projection(g, w)?, w)? == *g;
    }

    let ring_length = w.lift.algebra().length();
    let end_m = end_algebra(&w.lift)?;
    let scalar_check = (end_v.dim() == 1).then(|| {
        let id = NatTransform::identity(w.lift.clone());
        end_m.dim() == ring_length
            && end_m.space.basis().iter().all(|f| match express_as_scalar(f, w) {
                Ok(r) => id.scalar_action(&r) == *f,
                Err(_) => false,
            })
    });

    let report = verify_theorem(w, bw.seed)?;
    let modules = |seed| -> Result<Vec<Arc<RepModule>>, DecompError> {
        Ok(decompose(&w.lift, seed)?
            .summands
            .into_iter()
            .map(|s| s.module)
            .collect())
    };
    let mut rng = XorShift64Star::new(bw.seed);
    let ks_stable = same_iso_classes(&modules(1)?, &modules(2)?, &mut rng)?;

    Ok(BatteryOutcome {
        index: bw.index,
        seed: bw.seed,
        p: bw.p,
        n: bw.n,
        ring: bw.ring,
        intervals: bw.intervals.clone(),
        ring_length,
        base_end_dim: end_v.dim(),
        residue_hom_dim: homs.len(),
        round_trip,
        scalar_check,
        lift_end_dim: end_m.dim(),
        base_summands: report.base.len(),
        lift_summands: report.lift.as_ref().map(|d| d.len()),
        verdict: report.verdict,
        ks_stable,
    })
}

/// Evaluates instances `0..count` on `jobs` threads (0 picks the default);
/// outcomes come back in instance order.
pub fn run_battery(count: usize, seed: u64, jobs: usize) -> Result<Vec<BatteryOutcome>, DecompError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| DecompError::Inconsistent(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| evaluate(&generate(seed, i)))
            .collect()
    })
}

impl BatteryOutcome {
    pub fn correspondence_ok(&self) -> bool {
        self.round_trip && self.residue_hom_dim == self.base_end_dim && self.scalar_check != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "seed": self.seed,
            "p": self.p,
            "n": self.n,
            "ring": self.ring.name(),
            "intervals": self.intervals.iter().map(|&(b, d)| [b, d]).collect::<Vec<_>>(),
            "ring_length": self.ring_length,
            "base_end_dim": self.base_end_dim,
            "residue_hom_dim": self.residue_hom_dim,
            "round_trip": self.round_trip,
            "scalar_check": self.scalar_check,
            "lift_end_dim": self.lift_end_dim,
            "base_summands": self.base_summands,
            "lift_summands": self.lift_summands,
            "ks_stable": self.ks_stable,
            "verdict": self.verdict.label(),
            "reason": self.verdict.reason(),
        })
    }
}

/// Overall verdict: fail on any correspondence failure or failed instance, else
/// undecided if any instance is undecided.
pub fn battery_report(outcomes: &[BatteryOutcome], seed: u64) -> Value {
    let count = |label: &str| outcomes.iter().filter(|o| o.verdict.label() == label).count();
    let correspondence_failures = outcomes.iter().filter(|o| !o.correspondence_ok()).count();
    let unstable = outcomes.iter().filter(|o| !o.ks_stable).count();
    let verdict = if correspondence_failures + unstable + count("fail") > 0 {
        "fail"
    } else if count("undecided") > 0 {
        "undecided"
    } else {
        "pass"
    };
    json!({
        "command": "battery",
        "seed": seed,
        "count": outcomes.len(),
        "passed": count("pass"),
        "failed": count("fail"),
        "undecided": count("undecided"),
        "correspondence_failures": correspondence_failures,
        "unstable": unstable,
        "instances": outcomes.iter().map(BatteryOutcome::to_json).collect::<Vec<_>>(),
        "verdict": verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catmod::validate_lift;

    #[test]
    fn witnesses_are_valid_and_reproducible() {
        for i in 0..20 {
            let a = generate(5, i);
            validate_lift(&a.witness).unwrap();
            let b = generate(5, i);
            assert_eq!(a.witness.lift, b.witness.lift);
            assert_eq!(a.intervals, b.intervals);
            assert!(a.n <= MAX_VERTICES && a.intervals.iter().all(|&(b, d)| 1 <= b && b <= d && d <= a.n));
        }
    }

    #[test]
    fn output_is_independent_of_jobs() {
        let one = battery_report(&run_battery(12, 3, 1).unwrap(), 3);
        let four = battery_report(&run_battery(12, 3, 4).unwrap(), 3);
        assert_eq!(one, four);
    }

    #[test]
    fn field_lifts_are_the_base_up_to_g() {
        let bw = (0..50)
            .map(|i| generate(9, i))
            .find(|b| b.ring == RingKind::Field)
            .unwrap();
        let o = evaluate(&bw).unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        assert!(o.correspondence_ok());
    }
}
