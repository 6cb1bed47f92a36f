use std::ops::RangeInclusive;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_s_unit, lambda_set, PrimeSet};
use crate::arith::{is_prime_u64, valuation, Int, Rat, ValResult};
use crate::error::{Error, Result};

/// Three distinct T-units `x, y, z` (`T = S ∪ {p}`) with T-unit pairwise
/// differences, whose p-adic valuations are not all equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleWitness {
    pub p: u64,
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
    /// `v_p` of `x, y, z, x - y, x - z, y - z`.
    pub valuations: [i64; 6],
}

impl TripleWitness {
    fn build(p: u64, x: Rat, y: Rat, z: Rat) -> Self {
        let pi = Int::from(p);
        let quantities = [x.clone(), y.clone(), z.clone(), &x - &y, &x - &z, &y - &z];
        let valuations = quantities.map(|q| valuation(&pi, &q).finite().expect("nonzero"));
        TripleWitness { p, x, y, z, valuations }
    }

    fn quantities(&self) -> [Rat; 6] {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        [x.clone(), y.clone(), z.clone(), x - y, x - z, y - z]
    }

    /// Recomputes everything from `x, y, z` and `S`.
    pub fn verify(&self, s: &PrimeSet) -> bool {
        if self.p == 2 || !is_prime_u64(self.p) || s.contains(self.p) {
            return false;
        }
        let Ok(t) = s.with(self.p) else { return false };
        let q = self.quantities();
        if !q.iter().all(|v| is_s_unit(&t, v)) {
            return false;
        }
        let fresh = TripleWitness::build(self.p, self.x.clone(), self.y.clone(), self.z.clone());
        fresh.valuations == self.valuations && self.valuations.iter().any(|&v| v != self.valuations[0])
    }
}

fn check_p(s: &PrimeSet, p: u64) -> Result<PrimeSet> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime_u64(p) {
        return Err(Error::NonPrimeModulus(p.to_string()));
    }
    s.with(p)
}

/// Ordering used to pick a representative: integral pairs first, then
/// smaller height, then by value.
fn witness_key(w: &TripleWitness) -> (Int, Int, Rat, Rat) {
    let lcm = w.y.denom().lcm(w.z.denom());
    let h = w.y.height().max(w.z.height());
    (lcm, h, w.y.clone(), w.z.clone())
}

/// Every witness of the form `(1, λ1, λ2)` with `λ1 < λ2` in `Λ(T, bound)`
/// and `λ1 - λ2` a T-unit. Any witness scales to this form by dividing by
/// `x`, so nothing is lost beyond the exponent bound. Sorted by preference.
pub fn exceptional_candidates(s: &PrimeSet, p: u64, bound: u32) -> Result<Vec<TripleWitness>> {
    let t = check_p(s, p)?;
    if s.contains(p) {
        return Ok(Vec::new());
    }
    let lam = {
        let mut v = lambda_set(&t, bound);
        v.sort();
        v
    };
    let pi = Int::from(p);
    // Valuations of λ and 1 - λ are both zero, or the vector is already unequal.
    let mut out: Vec<TripleWitness> = (0..lam.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (lam, t, pi) = (&lam, &t, &pi);
            (i + 1..lam.len()).filter_map(move |j| {
                let d = &lam[i] - &lam[j];
                if !is_s_unit(t, &d) {
                    return None;
                }
                let unit = |x: &Rat| valuation(pi, x) == ValResult::Finite(0);
                let flat = [&lam[i], &lam[j]].iter().all(|l| unit(l) && unit(&(Rat::one() - *l))) && unit(&d);
                (!flat).then(|| TripleWitness::build(p, Rat::one(), lam[i].clone(), lam[j].clone()))
            })
        })
        .collect();
    out.sort_by_key(witness_key);
    Ok(out)
}

/// For each odd prime `p` in `range` outside `S`, the preferred witness from
/// [`exceptional_candidates`], if any. Ascending in `p`.
pub fn exceptional_triple_search(s: &PrimeSet, range: RangeInclusive<u64>, bound: u32) -> Vec<(u64, TripleWitness)> {
    let primes: Vec<u64> = range.filter(|&p| p > 2 && is_prime_u64(p) && !s.contains(p)).collect();
    primes
        .par_iter()
        .filter_map(|&p| {
            let w = exceptional_candidates(s, p, bound).ok()?.into_iter().next()?;
            debug_assert!(w.verify(s));
            Some((p, w))
        })
        .collect()
}

/// Brute force over raw exponent vectors: every triple `x < y < z` of
/// T-units `±prod q^e` with `|e| <= bound` whose differences are T-units and
/// whose valuation vector is not constant. Intended for small bounds only.
pub fn direct_triple_witnesses(s: &PrimeSet, p: u64, bound: u32) -> Result<Vec<TripleWitness>> {
    let t = check_p(s, p)?;
    if s.contains(p) {
        return Ok(Vec::new());
    }
    let b = bound as i64;
    let width = (2 * b + 1) as usize;
    let total = width.pow(t.len() as u32);
    let mut units: Vec<Rat> = Vec::with_capacity(2 * total);
    for mut code in 0..total {
        let mut x = Rat::one();
        for &q in t.primes() {
            let e = (code % width) as i64 - b;
            code /= width;
            x = x * Rat::from(Int::from(q)).pow(e as i32);
        }
        units.push(-x.clone());
        units.push(x);
    }
    units.sort();
    let n = units.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).filter(|&j| is_s_unit(&t, &(&units[j] - &units[i]))).collect())
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for (a, &j) in adj[i].iter().enumerate() {
            for &k in &adj[i][a + 1..] {
                if adj[j].binary_search(&k).is_ok() {
                    let w = TripleWitness::build(p, units[i].clone(), units[j].clone(), units[k].clone());
                    if w.valuations.iter().any(|&v| v != w.valuations[0]) {
                        out.push(w);
                    }
                }
            }
        }
    }
    Ok(out)
}
