use hyperred::arith::{factor, is_prime_u64, rat, val, Int, Rat, ValResult};
use hyperred::curves::{
    bad_odd_primes, canonical_roots, cluster_picture, good_example, has_pot_good_reduction_at, pgl2_equivalent,
    random_curve, unit_criterion_at, weierstrass_points, MobiusMap, RosenhainCurve, P1,
};
use proptest::prelude::*;

fn odd_primes_upto(n: u64) -> Vec<u64> {
    (3..=n).filter(|&p| is_prime_u64(p)).collect()
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=30).prop_map(|(a, b)| rat(a, b))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn valuation_is_additive(a in nonzero_rat(), b in nonzero_rat(), p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let p = Int::from(p);
        let va = val(&p, &a).unwrap();
        let vb = val(&p, &b).unwrap();
        prop_assert_eq!(val(&p, &(&a * &b)).unwrap(), va + vb);
        let s = &a + &b;
        if !s.is_zero() {
            prop_assert!(val(&p, &s).unwrap() >= va.min(vb));
        } else {
            prop_assert_eq!(val(&p, &s).unwrap(), ValResult::Infinite);
        }
    }

    #[test]
    fn factorization_round_trips(n in 1i64..10_000_000_000) {
        let n = Int::from(n);
        let f = factor(&n).unwrap();
        prop_assert_eq!(f.product(), n);
        prop_assert!(f.factors.iter().all(|(q, _)| is_prime_u64(q.try_into().unwrap())));
    }

    #[test]
    fn norm_obstruction(g in 2usize..=5, seed in any::<u64>()) {
        let c = random_curve(g, 40, seed).unwrap();
        for p in odd_primes_upto(2 * g as u64) {
            prop_assert!(!has_pot_good_reduction_at(&c, &Int::from(p)).unwrap());
        }
    }

    #[test]
    fn unit_criterion_matches_clusters(g in 2usize..=4, seed in any::<u64>(), p in prop::sample::select(odd_primes_upto(60))) {
        let c = random_curve(g, 30, seed).unwrap();
        let p = Int::from(p);
        prop_assert_eq!(unit_criterion_at(&c, &p).unwrap(), has_pot_good_reduction_at(&c, &p).unwrap());
    }

    #[test]
    fn affine_and_twist_invariance(seed in any::<u64>(), a in nonzero_rat(), b in small_rat(), c in nonzero_rat()) {
        let curve = random_curve(2, 25, seed).unwrap();
        let moved = curve.affine_image(&a, &b).unwrap();
        let twisted = curve.retwist(c).unwrap();
        for p in odd_primes_upto(40) {
            let p = Int::from(p);
            let base = has_pot_good_reduction_at(&curve, &p).unwrap();
            prop_assert_eq!(base, has_pot_good_reduction_at(&moved, &p).unwrap());
            prop_assert_eq!(base, has_pot_good_reduction_at(&twisted, &p).unwrap());
        }
        prop_assert_eq!(bad_odd_primes(&curve).primes, bad_odd_primes(&twisted).primes);
        prop_assert_eq!(canonical_roots(curve.roots()), canonical_roots(moved.roots()));
    }

    #[test]
    fn mobius_images_are_equivalent(seed in any::<u64>(), idx in 0usize..5, a in nonzero_rat(), b in small_rat()) {
        let curve = random_curve(2, 20, seed).unwrap();
        // x -> (a x + b) / (x - r) sends the root r to infinity.
        let r = curve.roots()[idx].clone();
        let Ok(map) = MobiusMap::new(a, b, Rat::one(), -r) else { return Ok(()) };
        let images: Vec<Rat> = weierstrass_points(curve.roots())
            .iter()
            .filter_map(|w| match map.apply(w) {
                P1::Finite(x) => Some(x),
                P1::Infinity => None,
            })
            .collect();
        prop_assert_eq!(images.len(), curve.roots().len());
        let found = pgl2_equivalent(curve.roots(), &images).unwrap();
        prop_assert!(found.is_some());
        let back = pgl2_equivalent(&images, curve.roots()).unwrap();
        prop_assert!(back.is_some());
        prop_assert_eq!(canonical_roots(curve.roots()), canonical_roots(&images));
    }

    #[test]
    fn curves_round_trip_through_json(seed in any::<u64>()) {
        let c = random_curve(3, 50, seed).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: RosenhainCurve = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn good_examples_are_tight() {
    for g in 2..=5usize {
        for p in odd_primes_upto(199).into_iter().filter(|&p| p > 2 * g as u64) {
            let c = good_example(g, &Int::from(p)).unwrap();
            assert!(has_pot_good_reduction_at(&c, &Int::from(p)).unwrap(), "g={g} p={p}");
            assert!(cluster_picture(&c, &Int::from(p)).unwrap().is_trivial());
        }
    }
}

#[test]
fn bad_primes_of_random_curves_divide_differences() {
    for seed in 0..50 {
        let c = random_curve(2, 30, seed).unwrap();
        let b = bad_odd_primes(&c);
        assert!(b.verify());
        for p in odd_primes_upto(100) {
            let p = Int::from(p);
            assert_eq!(b.contains(&p), !has_pot_good_reduction_at(&c, &p).unwrap());
        }
    }
}

#[test]
fn known_classes_are_distinct() {
    let c1: Vec<Rat> = (0..5).map(Rat::from).collect();
    let c2: Vec<Rat> = [0, 2, 3, 4, 6].into_iter().map(Rat::from).collect();
    assert!(pgl2_equivalent(&c1, &c2).unwrap().is_none());
    assert!(pgl2_equivalent(&c1, &c1).unwrap().is_some());
    let m = pgl2_equivalent(&c1, &c1.iter().map(|r| r * rat(2, 1)).collect::<Vec<_>>()).unwrap().unwrap();
    assert_eq!(m.apply(&P1::Finite(Rat::one())), P1::Finite(rat(2, 1)));
}
