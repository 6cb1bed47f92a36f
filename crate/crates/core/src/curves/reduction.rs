use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cluster::{check_odd_prime, picture_of_roots};
use super::curve::RosenhainCurve;
use crate::arith::{factor, int_string, valuation, Int, Rat, ValResult};
use crate::error::Result;

/// Potential good reduction at an odd prime: the cluster picture must be
/// trivial. The twist plays no role.
pub fn has_pot_good_reduction_at(curve: &RosenhainCurve, p: &Int) -> Result<bool> {
    check_odd_prime(p)?;
    Ok(picture_of_roots(curve.roots(), p).is_trivial())
}

/// The same test phrased on a normalized curve: every `λ`, `λ - 1` and
/// `λ_i - λ_j` must be a p-adic unit.
pub fn unit_criterion_at(curve: &RosenhainCurve, p: &Int) -> Result<bool> {
    let lambdas = curve.lambdas()?;
    check_odd_prime(p)?;
    let unit = |x: Rat| valuation(p, &x) == ValResult::Finite(0);
    for (i, l) in lambdas.iter().enumerate() {
        if !unit(l.clone()) || !unit(l - Rat::one()) {
            return Ok(false);
        }
        for m in &lambdas[i + 1..] {
            if !unit(l - m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evidence that a prime is bad: two root differences with different
/// valuations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrimeWitness {
    #[serde(with = "int_string")]
    pub prime: Int,
    pub pair_a: (Rat, Rat),
    pub val_a: i64,
    pub pair_b: (Rat, Rat),
    pub val_b: i64,
}

impl BadPrimeWitness {
    pub fn verify(&self) -> bool {
        let va = valuation(&self.prime, &(&self.pair_a.0 - &self.pair_a.1));
        let vb = valuation(&self.prime, &(&self.pair_b.0 - &self.pair_b.1));
        va == ValResult::Finite(self.val_a) && vb == ValResult::Finite(self.val_b) && va != vb
    }
}

/// The odd primes at which a curve fails to have potential good reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrimeSet {
    /// Ascending, odd.
    #[serde(with = "int_list")]
    pub primes: Vec<Int>,
    pub witnesses: Vec<BadPrimeWitness>,
}

impl BadPrimeSet {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &Int) -> bool {
        self.primes.contains(p)
    }

    /// Size of the set once 2 is added; 2 is never decided and always counted
    /// as bad.
    pub fn count_with_two(&self) -> usize {
        self.primes.len() + 1
    }

    /// Re-checks each witness against its roots and prime.
    pub fn verify(&self) -> bool {
        self.primes.len() == self.witnesses.len()
            && self.primes.iter().zip(&self.witnesses).all(|(p, w)| *p == w.prime && w.verify())
            && self.primes.windows(2).all(|w| w[0] < w[1])
    }
}

/// Odd primes dividing the numerator or denominator of some root difference.
/// Every other odd prime sees all differences as units, hence a trivial
/// picture.
pub fn candidate_primes(curve: &RosenhainCurve) -> BTreeSet<Int> {
    let diffs = curve.differences();
    let two = Int::from(2);
    diffs
        .par_iter()
        .flat_map_iter(|(_, _, d)| {
            let mut ps = Vec::new();
            for part in [d.numer(), d.denom()] {
                if !part.is_one() {
                    let f = factor(part).expect("nonzero difference");
                    ps.extend(f.factors.into_iter().map(|(p, _)| p));
                }
            }
            ps
        })
        .collect::<BTreeSet<Int>>()
        .into_iter()
        .filter(|p| *p != two)
        .collect()
}

pub fn bad_odd_primes(curve: &RosenhainCurve) -> BadPrimeSet {
    let roots = curve.roots();
    let mut primes = Vec::new();
    let mut witnesses = Vec::new();
    for p in candidate_primes(curve) {
        if let Some(w) = witness_at(roots, &p) {
            primes.push(p);
            witnesses.push(w);
        }
    }
    BadPrimeSet { primes, witnesses }
}

fn witness_at(roots: &[Rat], p: &Int) -> Option<BadPrimeWitness> {
    let mut lo: Option<(usize, usize, i64)> = None;
    let mut hi: Option<(usize, usize, i64)> = None;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let v = valuation(p, &(&roots[i] - &roots[j])).finite().expect("distinct roots");
            if lo.is_none_or(|(_, _, w)| v < w) {
                lo = Some((i, j, v));
            }
            if hi.is_none_or(|(_, _, w)| v > w) {
                hi = Some((i, j, v));
            }
        }
    }
    let (a, b) = (lo?, hi?);
    (a.2 != b.2).then(|| BadPrimeWitness {
        prime: p.clone(),
        pair_a: (roots[a.0].clone(), roots[a.1].clone()),
        val_a: a.2,
        pair_b: (roots[b.0].clone(), roots[b.1].clone()),
        val_b: b.2,
    })
}

/// `2^(4g)` times the discriminant of `c * prod (x - r)`, i.e.
/// `2^(4g) c^(4g) prod_{i<j} (r_i - r_j)^2`. Integral whenever the roots and
/// twist are.
pub fn model_discriminant(curve: &RosenhainCurve) -> Rat {
    let g = curve.genus() as i32;
    let prod = curve.differences().iter().fold(Rat::one(), |acc, (_, _, d)| acc * d * d);
    Rat::from(Int::from(2)).pow(4 * g) * curve.twist().pow(4 * g) * prod
}

/// Odd part of a nonzero integer.
pub fn odd_part(n: &Int) -> Int {
    let mut n = n.clone();
    while !n.is_zero() && n.is_even() {
        n >>= 1;
    }
    n
}

mod int_list {
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
