use std::collections::BTreeSet;

use hyperred::arith::{Int, Rat};
use hyperred::curves::{bad_odd_primes, canonical_roots, pgl2_equivalent, RosenhainCurve};
use hyperred::enumerate::{enumerate_genus2, enumerate_genus_g};
use hyperred::sunit::PrimeSet;

fn set(v: &[u64]) -> PrimeSet {
    PrimeSet::new(v.to_vec()).unwrap()
}

fn members(s: &PrimeSet, bound: u32) -> BTreeSet<Vec<Rat>> {
    enumerate_genus2(s, bound).unwrap().into_iter().flat_map(|c| c.members).collect()
}

#[test]
fn discovered_sets_are_closed_under_renormalization() {
    let found = members(&set(&[2, 3]), 40);
    for roots in &found {
        for u in roots {
            for v in roots {
                if u == v {
                    continue;
                }
                let mut image: Vec<Rat> = roots.iter().map(|r| (r - u) / (v - u)).collect();
                image.sort();
                assert!(found.contains(&image), "{roots:?} via ({u}, {v})");
            }
        }
    }
}

#[test]
fn classes_are_sound_and_distinct() {
    for s in [set(&[2, 3]), set(&[2, 3, 5])] {
        let bound = if s.len() == 2 { 40 } else { 10 };
        let classes = enumerate_genus2(&s, bound).unwrap();
        let odd: Vec<Int> = s.odd().into_iter().map(Int::from).collect();
        for c in &classes {
            for m in &c.members {
                let b = bad_odd_primes(&RosenhainCurve::new(m.clone()).unwrap());
                assert!(b.primes.iter().all(|p| odd.contains(p)));
                assert_eq!(canonical_roots(m), c.canonical);
            }
        }
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert!(pgl2_equivalent(a.curve().roots(), b.curve().roots()).unwrap().is_none());
            }
        }
    }
}

#[test]
fn monotone_in_bound_and_primes() {
    let canon = |s: &PrimeSet, b: u32| -> BTreeSet<Vec<Int>> {
        enumerate_genus2(s, b).unwrap().into_iter().map(|c| c.canonical).collect()
    };
    let small = canon(&set(&[2, 3]), 2);
    let full = canon(&set(&[2, 3]), 40);
    assert!(small.is_subset(&full));
    assert_eq!(full.len(), 2);
    let wider = canon(&set(&[2, 3, 5]), 10);
    assert!(full.is_subset(&wider));
    assert!(wider.len() > 2);
}

#[test]
fn higher_genus_runs_are_reported() {
    let e = enumerate_genus_g(&set(&[2, 3]), 2, 40, 1_000_000).unwrap();
    assert_eq!(e.classes, enumerate_genus2(&set(&[2, 3]), 40).unwrap());
    let e = enumerate_genus_g(&set(&[2]), 3, 40, 1_000_000).unwrap();
    assert!(e.exhaustive && e.classes.is_empty());
    let e = enumerate_genus_g(&set(&[2, 3]), 10, 40, 1_000_000).unwrap();
    assert!(e.exhaustive && e.classes.is_empty());
}
