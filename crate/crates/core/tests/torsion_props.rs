mod common;

use common::*;
use modclose::closure::{Divisible, Subcategory};
use modclose::hom::hom_group;
use modclose::module::quotient;
use modclose::ring::RingDesc;
use modclose::torsion::{
    classify, free_summand_rank, is_bounded, torsion_radical, verify_torsion_theory,
    ModuleUniverse, TorsionClass,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn radical_sequence(
        n in proptest::sample::select(MOD_RINGS.to_vec()),
        seed in any::<u64>(),
    ) {
        let ring = RingDesc::IntegersMod(n);
        let mut rng = rng(seed);
        let m = random_presentation(&mut rng, &ring, 3);
        let cat = random_subcategory(&mut rng, &ring);
        let t = torsion_radical(&m, &cat).unwrap();
        let t_mod = t.as_module();
        prop_assert_eq!(classify(&t_mod, &cat).unwrap(), TorsionClass::Torsion);
        let (q, _) = quotient(&m, &t).unwrap();
        prop_assert!(q.is_zero() || classify(&q, &cat).unwrap() == TorsionClass::TorsionFree);
        for a in cat.finite_objects() {
            prop_assert!(hom_group(&t_mod, a).unwrap().is_zero());
        }
    }

    #[test]
    fn bounded_bridge(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let m = random_presentation(&mut rng, &RingDesc::Integers, 3);
        let cat = Subcategory::divisible(vec![Divisible::Rationals]).unwrap();
        let bounded = is_bounded(&m).unwrap();
        prop_assert_eq!(bounded, free_summand_rank(&m).unwrap() == 0);
        prop_assert_eq!(bounded, classify(&m, &cat).unwrap() == TorsionClass::Torsion);
        let hom_to_z = hom_group(&m, &modclose::module::FPModule::free(RingDesc::Integers, 1)).unwrap();
        prop_assert_eq!(bounded, hom_to_z.is_zero());
    }
}

#[test]
fn verification_is_order_independent() {
    let ring = RingDesc::IntegersMod(12);
    let inj = injectives(&ring, 2, 36);
    let base = ModuleUniverse::exhaustive(ring.clone(), 2, 24).unwrap();
    let mut rng = rng(7);
    for _ in 0..3 {
        let mut objs = base.objects().to_vec();
        objs.shuffle(&mut rng);
        let mut cat_objs: Vec<_> = inj.choose_multiple(&mut rng, 2).cloned().collect();
        let cat_a = Subcategory::finite(ring.clone(), cat_objs.clone()).unwrap();
        cat_objs.reverse();
        let cat_b = Subcategory::finite(ring.clone(), cat_objs).unwrap();

        let ra = verify_torsion_theory(&base, &cat_a).unwrap();
        let shuffled = ModuleUniverse::new(ring.clone(), objs).unwrap();
        let rb = verify_torsion_theory(&shuffled, &cat_b).unwrap();

        let key = |r: &modclose::torsion::TorsionTheoryReport, idx: &[usize]| {
            let mut v: Vec<Vec<num_bigint::BigInt>> = idx
                .iter()
                .map(|&i| r.universe.objects()[i].invariant_factors().to_vec())
                .collect();
            v.sort();
            v
        };
        assert_eq!(key(&ra, &ra.t_members), key(&rb, &rb.t_members));
        assert_eq!(key(&ra, &ra.f_members), key(&rb, &rb.f_members));
        let verdicts = |r: &modclose::torsion::TorsionTheoryReport| {
            r.checks.iter().map(|c| (c.name, c.passed)).collect::<Vec<_>>()
        };
        assert_eq!(verdicts(&ra), verdicts(&rb));
    }
}

#[test]
fn universe_flags() {
    let u = ModuleUniverse::exhaustive(RingDesc::IntegersMod(6), 2, 36).unwrap();
    assert!(u.closed_under_submodules);
    assert!(u.closed_under_quotients);
    // Z/6 ⊕ Z/6 ⊕ ... leaves the two-generator bound.
    assert!(!u.closed_under_direct_sums);
}

#[test]
fn z_universe_with_q_is_all_torsion() {
    let u = ModuleUniverse::exhaustive(RingDesc::Integers, 2, 16).unwrap();
    let cat = Subcategory::divisible(vec![Divisible::Rationals]).unwrap();
    let rep = verify_torsion_theory(&u, &cat).unwrap();
    assert!(rep.all_passed());
    assert_eq!(rep.t_members.len(), u.objects().len());
}

#[test]
fn z_universe_with_qmodz_is_all_torsion_free() {
    let u = ModuleUniverse::exhaustive(RingDesc::Integers, 2, 16).unwrap();
    let cat = Subcategory::divisible(vec![Divisible::RationalsModZ]).unwrap();
    let rep = verify_torsion_theory(&u, &cat).unwrap();
    assert!(rep.all_passed(), "{:#?}", rep.checks);
    assert_eq!(rep.f_members.len(), u.objects().len());
}
