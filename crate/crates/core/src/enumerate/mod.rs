//! Enumeration of hyperelliptic curves `y^2 = c x (x - 1) prod (x - λ_i)`
//! with all Weierstrass points rational and potentially good reduction
//! outside a finite prime set `S` containing 2.
//!
//! By the unit criterion such a curve is determined, up to twist, by a set of
//! `2g - 1` values in `Λ(S)` whose pairwise differences are S-units. We list
//! those sets (cliques of the "difference is an S-unit" graph on `Λ(S, B)`),
//! then group them into geometric classes by a canonical form.
//! The twist `c` stays free; classes are geometric.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{Int, Rat};
use crate::curves::{
    bad_odd_primes, canonical_roots, model_discriminant, pgl2_equivalent, BadPrimeSet, RosenhainCurve,
};
use crate::error::{Error, Result};
use crate::sunit::{is_s_unit, lambda_set, PrimeSet};

/// One geometric isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    /// Lexicographically least integral affine normal form over all choices
    /// of the point at infinity.
    #[serde(with = "int_vec")]
    pub canonical: Vec<Int>,
    /// Every normalized root set found by the search in this class, sorted.
    pub members: Vec<Vec<Rat>>,
    /// Bad odd primes of the canonical model.
    pub bad_primes: BadPrimeSet,
    /// Model discriminant of the canonical model with `c = 1`.
    pub discriminant: Rat,
}

impl IsoClass {
    pub fn curve(&self) -> RosenhainCurve {
        RosenhainCurve::new(self.canonical.iter().cloned().map(Rat::from).collect()).expect("valid canonical roots")
    }

    pub fn genus(&self) -> usize {
        (self.canonical.len() - 1) / 2
    }
}

/// Classes plus bookkeeping for a capped search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub genus: usize,
    pub lambda_count: usize,
    /// Partial and complete subsets visited by the backtracking search.
    pub examined: u64,
    /// Root sets found before deduplication.
    pub candidates: usize,
    /// False when the cap stopped the search early.
    pub exhaustive: bool,
    pub classes: Vec<IsoClass>,
}

/// Genus-2 classes with good reduction outside `S` (up to exponent bound `bound`).
pub fn enumerate_genus2(s: &PrimeSet, bound: u32) -> Result<Vec<IsoClass>> {
    Ok(enumerate_genus_g(s, 2, bound, u64::MAX)?.classes)
}

/// Same pipeline for `2g - 1` roots beyond 0 and 1. At most `cap` subsets are examined.
pub fn enumerate_genus_g(s: &PrimeSet, g: usize, bound: u32, cap: u64) -> Result<Enumeration> {
    if !s.contains(2) {
        return Err(Error::MissingEvenPrime);
    }
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g}")));
    }
    let mut lam = lambda_set(s, bound);
    lam.sort();
    let n = lam.len();
    let adj: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && is_s_unit(s, &(&lam[i] - &lam[j]))).collect()).collect();

    let mut search = CliqueSearch { adj: &adj, k: 2 * g - 1, cap, examined: 0, stopped: false, found: Vec::new() };
    search.extend(&mut Vec::new(), (0..n).collect());

    let root_sets: Vec<Vec<Rat>> = search
        .found
        .iter()
        .map(|idx| {
            let mut r = vec![Rat::zero(), Rat::one()];
            r.extend(idx.iter().map(|&i| lam[i].clone()));
            r.sort();
            r
        })
        .collect();
    let candidates = root_sets.len();

    let mut groups: BTreeMap<Vec<Int>, Vec<Vec<Rat>>> = BTreeMap::new();
    for r in root_sets {
        groups.entry(canonical_roots(&r)).or_default().push(r);
    }
    let odd_s: Vec<Int> = s.odd().into_iter().map(Int::from).collect();
    let mut classes = Vec::with_capacity(groups.len());
    for (canonical, mut members) in groups {
        members.sort();
        let rep: Vec<Rat> = canonical.iter().cloned().map(Rat::from).collect();
        for m in &members {
            if pgl2_equivalent(&rep, m)?.is_none() {
                return Err(Error::Invariant(format!("{m:?} not equivalent to its canonical form")));
            }
            let curve = RosenhainCurve::new(m.clone())?;
            let bad = bad_odd_primes(&curve);
            if !bad.primes.iter().all(|p| odd_s.contains(p)) {
                return Err(Error::Invariant(format!("{m:?} has bad primes {:?} outside S", bad.primes)));
            }
        }
        let curve = RosenhainCurve::new(rep)?;
        classes.push(IsoClass {
            bad_primes: bad_odd_primes(&curve),
            discriminant: model_discriminant(&curve),
            canonical,
            members,
        });
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if pgl2_equivalent(a.curve().roots(), b.curve().roots())?.is_some() {
                return Err(Error::Invariant(format!("classes {:?} and {:?} coincide", a.canonical, b.canonical)));
            }
        }
    }
    Ok(Enumeration {
        genus: g,
        lambda_count: n,
        examined: search.examined,
        candidates,
        exhaustive: !search.stopped,
        classes,
    })
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<bool>],
    k: usize,
    cap: u64,
    examined: u64,
    stopped: bool,
    found: Vec<Vec<usize>>,
}

impl CliqueSearch<'_> {
    /// `chosen` is a clique; `pool` holds larger indices adjacent to all of it.
    fn extend(&mut self, chosen: &mut Vec<usize>, pool: Vec<usize>) {
        if chosen.len() == self.k {
            self.found.push(chosen.clone());
            return;
        }
        if chosen.len() + pool.len() < self.k {
            return;
        }
        for (a, &v) in pool.iter().enumerate() {
            if self.stopped {
                return;
            }
            if self.examined >= self.cap {
                self.stopped = true;
                return;
            }
            self.examined += 1;
            let next: Vec<usize> = pool[a + 1..].iter().copied().filter(|&u| self.adj[v][u]).collect();
            chosen.push(v);
            self.extend(chosen, next);
            chosen.pop();
        }
    }
}

mod int_vec {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|p| p.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn two_classes_over_two_and_three() {
        let e = enumerate_genus_g(&set(&[2, 3]), 2, 40, 1_000_000).unwrap();
        assert!(e.exhaustive);
        assert_eq!(e.lambda_count, 21);
        assert_eq!(e.candidates, 40);
        let canon: Vec<Vec<Int>> = e.classes.iter().map(|c| c.canonical.clone()).collect();
        assert_eq!(canon, vec![ints(&[0, 1, 2, 3, 4]), ints(&[0, 2, 3, 4, 6])]);
        assert_eq!(e.classes[0].members.len(), 30);
        assert_eq!(e.classes[1].members.len(), 10);
        let normalized = vec![rat(0, 1), rat(1, 1), rat(3, 2), rat(2, 1), rat(3, 1)];
        assert!(e.classes[1].members.contains(&normalized));
        for c in &e.classes {
            assert_eq!(c.bad_primes.primes, ints(&[3]));
        }
        assert_eq!(e.classes[0].discriminant, Rat::from(Int::from(1u64 << 18) * 81));
    }

    #[test]
    fn nothing_over_two_alone() {
        assert!(enumerate_genus2(&set(&[2]), 40).unwrap().is_empty());
        assert!(enumerate_genus_g(&set(&[2]), 3, 40, 1_000_000).unwrap().classes.is_empty());
    }

    #[test]
    fn high_genus_is_empty_and_exhaustive() {
        let e = enumerate_genus_g(&set(&[2, 3]), 10, 40, 1_000_000).unwrap();
        assert!(e.exhaustive);
        assert!(e.classes.is_empty());
    }

    #[test]
    fn cap_reports_partial_search() {
        let e = enumerate_genus_g(&set(&[2, 3]), 2, 40, 5).unwrap();
        assert!(!e.exhaustive);
        assert_eq!(e.examined, 5);
    }

    #[test]
    fn requires_two() {
        assert_eq!(enumerate_genus2(&set(&[3]), 40), Err(Error::MissingEvenPrime));
    }
}
