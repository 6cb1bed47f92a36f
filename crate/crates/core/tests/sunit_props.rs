use std::collections::BTreeSet;

use hyperred::arith::{rat, Rat};
use hyperred::sunit::{
    direct_triple_witnesses, exceptional_triple_search, is_s_unit, lambda_set, s3_orbits, solve_two_term, PrimeSet,
    TwoTermSolution,
};
use proptest::prelude::*;

fn s23() -> PrimeSet {
    PrimeSet::new(vec![2, 3]).unwrap()
}

#[test]
fn count_is_stable_from_four_to_sixty() {
    let full: BTreeSet<Rat> = lambda_set(&s23(), 60).into_iter().collect();
    assert_eq!(full.len(), 21);
    for b in 4..=60 {
        let sols = solve_two_term(&s23(), b);
        assert_eq!(sols.len(), 21, "B={b}");
    }
    assert!(solve_two_term(&s23(), 2).len() < 21);
}

#[test]
fn solutions_reverify_independently() {
    for set in [vec![2], vec![2, 3], vec![2, 5], vec![2, 3, 5]] {
        let s = PrimeSet::new(set).unwrap();
        for sol in solve_two_term(&s, 8) {
            assert_eq!(&sol.x + &sol.y, Rat::one());
            // Recheck membership by factoring numerator and denominator.
            for v in [&sol.x, &sol.y] {
                for part in [v.numer(), v.denom()] {
                    let f = hyperred::arith::factor(part).unwrap();
                    assert!(f.primes().all(|q| s.primes().iter().any(|&p| hyperred::arith::Int::from(p) == *q)));
                }
            }
        }
    }
}

#[test]
fn solution_set_is_closed_under_the_symmetries() {
    for set in [vec![2, 3], vec![2, 5], vec![2, 3, 5]] {
        let s = PrimeSet::new(set).unwrap();
        let big: BTreeSet<(Rat, Rat)> = solve_two_term(&s, 24).into_iter().map(|t| (t.x, t.y)).collect();
        for t in solve_two_term(&s, 6) {
            let (x, y) = (t.x, t.y);
            for image in [(y.clone(), x.clone()), (x.recip().unwrap(), -(&y / &x)), (-(&x / &y), y.recip().unwrap())] {
                assert!(big.contains(&image), "{image:?}");
            }
        }
    }
    let lam = lambda_set(&s23(), 40);
    let orbits = s3_orbits(&lam).unwrap();
    let union: BTreeSet<Rat> = orbits.into_iter().flatten().collect();
    assert_eq!(union, lam.into_iter().collect());
}

#[test]
fn triple_search_routes_agree() {
    let s = s23();
    for p in [5u64, 7, 11, 13] {
        let direct = direct_triple_witnesses(&s, p, 1).unwrap();
        let lambda = exceptional_triple_search(&s, p..=p, 2);
        assert_eq!(direct.is_empty(), lambda.is_empty(), "p={p}");
        assert!(direct.iter().all(|w| w.verify(&s)));
    }
}

#[test]
fn witnesses_for_five_and_seven() {
    let hits = exceptional_triple_search(&s23(), 3..=7, 12);
    assert_eq!(hits.iter().map(|(p, _)| *p).collect::<Vec<_>>(), vec![5, 7]);
    assert!(hits.iter().all(|(_, w)| w.verify(&s23())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monotone_in_bound(b1 in 1u32..8, extra in 0u32..6, pick in prop::sample::subsequence(vec![2u64, 3, 5, 7], 0..=3)) {
        let s = PrimeSet::new(pick).unwrap();
        let small: BTreeSet<Rat> = lambda_set(&s, b1).into_iter().collect();
        let large: BTreeSet<Rat> = lambda_set(&s, b1 + extra).into_iter().collect();
        prop_assert!(small.is_subset(&large));
        for l in &large {
            prop_assert!(is_s_unit(&s, l) && is_s_unit(&s, &(l - Rat::one())));
        }
    }

    #[test]
    fn membership_matches_definition(a in -2000i64..2000, b in 1i64..2000) {
        let x = rat(a, b);
        let s = s23();
        let smooth = |mut n: i64| {
            n = n.abs();
            if n == 0 { return false; }
            for q in [2, 3] { while n % q == 0 { n /= q; } }
            n == 1
        };
        let expected = a != 0 && smooth(x.numer().try_into().unwrap()) && smooth(x.denom().try_into().unwrap());
        prop_assert_eq!(is_s_unit(&s, &x), expected);
    }
}

#[test]
fn solutions_serialize_as_exact_strings() {
    let sols = solve_two_term(&s23(), 40);
    let text = serde_json::to_string(&sols).unwrap();
    assert!(text.contains("\"9/8\""));
    let back: Vec<TwoTermSolution> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, sols);
}
