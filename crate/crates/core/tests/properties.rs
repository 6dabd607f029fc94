use std::sync::Arc;

use proptest::prelude::*;

use persist_lift::battery::generate;
use persist_lift::catmod::{hom_basis, NatTransform, RepModule};
use persist_lift::decomp::{decompose, find_isomorphism};
use persist_lift::linalg::FieldElem;
use persist_lift::rng::XorShift64Star;

fn random_endo(m: &Arc<RepModule>, rng: &mut XorShift64Star) -> NatTransform {
    let space = hom_basis(m, m).unwrap();
    let k = m.algebra().field();
    let coeffs: Vec<FieldElem> = (0..space.dim())
        .map(|_| k.from_u64(rng.below(k.modulus() as u64)))
        .collect();
    space.combination(&coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(seed in any::<u64>(), index in 0usize..1000) {
        let lift = generate(seed, index).witness.lift;
        let mut rng = XorShift64Star::new(seed ^ 1);
        let (f, g, h) = (random_endo(&lift, &mut rng), random_endo(&lift, &mut rng), random_endo(&lift, &mut rng));
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn scalar_action_is_a_ring_map(seed in any::<u64>(), index in 0usize..1000) {
        let lift = generate(seed, index).witness.lift;
        let alg = lift.algebra().clone();
        let mut rng = XorShift64Star::new(seed ^ 2);
        let mut elem = || {
            let coeffs: Vec<i64> = (0..alg.dim()).map(|_| rng.below(alg.field().modulus() as u64) as i64).collect();
            alg.elem(&coeffs)
        };
        let (r, s) = (elem(), elem());
        let id = NatTransform::identity(lift.clone());
        let (mr, ms) = (id.scalar_action(&r), id.scalar_action(&s));
        prop_assert_eq!(mr.compose(&ms).unwrap(), id.scalar_action(&alg.mul(&r, &s)));
        prop_assert_eq!(mr.add(&ms).unwrap(), id.scalar_action(&alg.add(&r, &s)));
        prop_assert!(id.scalar_action(&alg.one()).is_identity());
        // scalars are central: μ_r commutes with every endomorphism
        let f = random_endo(&lift, &mut XorShift64Star::new(seed ^ 3));
        prop_assert_eq!(f.compose(&mr).unwrap(), mr.compose(&f).unwrap());
    }

    #[test]
    fn reassembly_is_an_isomorphism(seed in any::<u64>(), index in 0usize..1000) {
        let bw = generate(seed, index);
        for m in [&bw.witness.base, &bw.witness.lift] {
            let d = decompose(m, seed).unwrap();
            let total: usize = d.summands.iter().map(|s| s.module.total_rank()).sum();
            prop_assert_eq!(total, m.total_rank());
            prop_assert!(d.reassembly().unwrap().is_isomorphism());
            for s in &d.summands {
                prop_assert!(s.projection.compose(&s.inclusion).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn summands_do_not_depend_on_the_seed(seed in any::<u64>(), index in 0usize..1000, a in any::<u64>(), b in any::<u64>()) {
        let m = generate(seed, index).witness.lift;
        let first: Vec<_> = decompose(&m, a).unwrap().summands.into_iter().map(|s| s.module).collect();
        let second: Vec<_> = decompose(&m, b).unwrap().summands.into_iter().map(|s| s.module).collect();
        prop_assert_eq!(first.len(), second.len());
        let mut rng = XorShift64Star::new(seed);
        let mut used = vec![false; second.len()];
        for x in &first {
            let j = (0..second.len()).find(|&j| !used[j] && find_isomorphism(x, &second[j], &mut rng).unwrap().is_some());
            prop_assert!(j.is_some());
            used[j.unwrap()] = true;
        }
    }
}
