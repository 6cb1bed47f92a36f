use std::collections::BTreeSet;

use hyperred::arith::{factorial, is_prime_fast, Int};
use hyperred::forge::{
    admissible_tuple, build_genus5_curve, find_cyclotomic_witness, find_cyclotomic_witness_with, find_genus5_witness,
    find_tuple_witness_with, genus5_conditions, genus5_roots, tuple_roots, Checkpoint, ConstructionMode, SearchControl,
    SearchOutcome, Verdict,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn in_pool(threads: usize, f: impl FnOnce() -> SearchOutcome + Send) -> SearchOutcome {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

/// Removes from `d` every prime it shares with `pool`.
fn strip_by_gcd(mut d: Int, pool: &Int) -> Int {
    loop {
        let g = d.gcd(pool);
        if g.is_one() {
            return d.abs();
        }
        d /= g;
    }
}

fn odd_part(mut n: Int) -> Int {
    while !n.is_zero() && n.is_even() {
        n >>= 1;
    }
    n
}

fn small_smooth(mut n: Int, bound: u64) -> bool {
    n = n.abs();
    for q in 2..=bound {
        while !n.is_zero() && (&n % q).is_zero() {
            n /= q;
        }
    }
    n.is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn genus5_differences_have_controlled_support(t in 1u64..2_000_000_000) {
        let m = Int::from(t) * 5040u32;
        let m2 = &m * &m;
        let pool = &m * (&m2 - 1u32) * (&m2 + 1u32) * (&m2 - &m * 2u32 - 1u32) * (&m2 + &m * 2u32 - 1u32) * 105u32;
        let roots = genus5_roots(&m);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let rest = strip_by_gcd(&roots[i] - &roots[j], &pool);
                prop_assert!(odd_part(rest).is_one());
            }
        }
    }

    #[test]
    fn literal_sixth_condition_is_a_square(t in 1u64..1_000_000_000) {
        let m = Int::from(t) * 5040u32;
        let literal = &m * &m - &m * 2u32 + 1u32;
        prop_assert_eq!(&literal, &((&m - 1u32) * (&m - 1u32)));
        prop_assert!(!is_prime_fast(&literal));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn corrected_tuple_differences_stay_in_the_constellation(g in 2usize..=4, p in 1u64..10_000_000) {
        let p = Int::from(p);
        let members: BTreeSet<Int> = admissible_tuple(g).offsets.iter().map(|h| &p + h).collect();
        let roots = tuple_roots(g, &p, ConstructionMode::Corrected);
        let bound = 2 * g as u64;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = (&roots[j] - &roots[i]).abs();
                let ok = small_smooth(d.clone(), bound)
                    || members.iter().any(|q| (&d % q).is_zero() && small_smooth(&d / q, bound));
                prop_assert!(ok, "difference {} for p={}", d, p);
            }
        }
    }
}

#[test]
fn literal_last_root_leaves_the_tuple() {
    for g in 2..=6usize {
        let step = factorial(2 * g as u64);
        let offsets: BTreeSet<Int> = admissible_tuple(g).offsets.into_iter().collect();
        // last - p and last - (p + h_1), both of the form p + offset.
        for extra in [&step * (2 * g), &step * (2 * g - 1)] {
            assert!(!offsets.contains(&extra), "g={g}");
        }
        // Corrected: last - (p + h_i) = p + h_{2g-2-i}, always inside.
        for i in 0..2 * g - 1 {
            assert!(offsets.contains(&(&step * (2 * g - 2 - i))));
        }
    }
}

#[test]
fn genus5_witness_passes_budget() {
    let k = find_genus5_witness(30_000).expect("witness below 30000");
    assert_eq!(k, 27_239);
    let w = build_genus5_curve(&Int::from(k)).unwrap();
    assert_eq!(w.curve.roots().len(), 11);
    assert_eq!(w.budget, 10);
    assert_eq!(w.verdict, Verdict::Pass);
    let allowed: BTreeSet<Int> =
        genus5_conditions(&Int::from(k)).into_iter().map(|(_, v)| v).chain([3, 5, 7].map(Int::from)).collect();
    assert!(w.bad_primes.primes.iter().all(|p| allowed.contains(p)), "{:?}", w.bad_primes.primes);
    assert!(w.bad_count() <= 10);
    assert!(w.verify());
}

#[test]
fn searches_do_not_depend_on_worker_count() {
    let ctl = SearchControl { interval: 64, ..Default::default() };
    let a = in_pool(1, || find_tuple_witness_with(3, 1_000_000, &ctl).unwrap());
    let b = in_pool(4, || find_tuple_witness_with(3, 1_000_000, &ctl).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, SearchOutcome::Found { value: 257 });
    let a = in_pool(1, || find_cyclotomic_witness_with(3, 10_000_000, &ctl).unwrap());
    let b = in_pool(4, || find_cyclotomic_witness_with(3, 10_000_000, &ctl).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.found(), find_cyclotomic_witness(3, 10_000_000));
}

#[test]
fn interrupted_cyclotomic_search_resumes_to_the_same_answer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cyclo.json");
    let ctl = SearchControl { checkpoint: Some(path.clone()), resume: true, interval: 4, stop_after_segments: Some(2) };
    let first = find_cyclotomic_witness_with(3, 10_000_000, &ctl).unwrap();
    assert_eq!(first, SearchOutcome::Interrupted { scanned_upto: 9 });
    let cp = Checkpoint::load(&path).unwrap();
    assert_eq!((cp.scanned_upto, cp.witnesses.len(), cp.alpha.as_str()), (9, 0, "720"));
    let resumed =
        find_cyclotomic_witness_with(3, 10_000_000, &SearchControl { stop_after_segments: None, ..ctl }).unwrap();
    assert_eq!(resumed.found(), find_cyclotomic_witness(3, 10_000_000));
}
