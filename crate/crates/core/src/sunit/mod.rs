//! S-units over the rationals: membership, bounded-exponent solutions of
//! `x + y = 1`, the induced λ-sets, their orbits under `x -> 1 - x` and
//! `x -> 1/x`, and a search for triples of T-units with T-unit differences
//! whose valuations at the extra prime are not all equal.
//!
//! Searches are complete only relative to the exponent bound `B`.

mod triples;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int_valuation_u64, is_prime_u64, Int, Rat};
use crate::error::{Error, Result};

pub use triples::{direct_triple_witnesses, exceptional_candidates, exceptional_triple_search, TripleWitness};

/// Default exponent bound for two-term searches.
pub const DEFAULT_BOUND: u32 = 40;

/// A finite set of rational primes, sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        primes.sort_unstable();
        primes.dedup();
        if let Some(&q) = primes.iter().find(|&&q| !is_prime_u64(q)) {
            return Err(Error::NonPrimeModulus(q.to_string()));
        }
        Ok(PrimeSet(primes))
    }

    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    pub fn primes(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// `self ∪ {p}`.
    pub fn with(&self, p: u64) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(p);
        Self::new(v)
    }

    /// Odd members.
    pub fn odd(&self) -> Vec<u64> {
        self.0.iter().copied().filter(|&q| q != 2).collect()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.iter().all(|&q| other.contains(q))
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Vec<u64> {
        s.0
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

impl std::str::FromStr for PrimeSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(PrimeSet::empty());
        }
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad prime {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(v)
    }
}

/// Removes every prime of `s` from the integer `n`.
fn strip(s: &PrimeSet, n: &Int) -> Int {
    let mut n = n.abs();
    for &q in s.primes() {
        let e = int_valuation_u64(q, &n);
        if e > 0 {
            n /= num_traits::pow(Int::from(q), e as usize);
        }
    }
    n
}

fn is_s_unit_int(s: &PrimeSet, n: &Int) -> bool {
    !n.is_zero() && strip(s, n).is_one()
}

/// `x` is nonzero and has valuation zero at every prime outside `s`.
pub fn is_s_unit(s: &PrimeSet, x: &Rat) -> bool {
    !x.is_zero() && is_s_unit_int(s, x.numer()) && is_s_unit_int(s, x.denom())
}

/// An ordered solution of `x + y = 1` in S-units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoTermSolution {
    pub x: Rat,
    pub y: Rat,
}

impl TwoTermSolution {
    pub fn verify(&self, s: &PrimeSet) -> bool {
        (&self.x + &self.y).is_one() && is_s_unit(s, &self.x) && is_s_unit(s, &self.y)
    }
}

/// All ordered pairs `(x, 1 - x)` with `x = ±prod q^e`, `|e| <= bound`, and
/// `1 - x` an S-unit; sorted by `(numerator, denominator)` of `x`.
pub fn solve_two_term(s: &PrimeSet, bound: u32) -> Vec<TwoTermSolution> {
    let b = bound as i64;
    let width = (2 * b + 1) as usize;
    let k = s.len();
    // pows[i][e] = q_i^e for 0 <= e <= bound.
    let pows: Vec<Vec<Int>> = s
        .primes()
        .iter()
        .map(|&q| {
            let mut v = vec![Int::one()];
            for e in 1..=bound as usize {
                let next = &v[e - 1] * q;
                v.push(next);
            }
            v
        })
        .collect();
    let total = width.checked_pow(k as u32).expect("exponent box too large");

    let mut out: Vec<TwoTermSolution> = (0..total)
        .into_par_iter()
        .flat_map_iter(|mut code| {
            let mut num = Int::one();
            let mut den = Int::one();
            for pw in &pows {
                let e = (code % width) as i64 - b;
                code /= width;
                if e > 0 {
                    num *= &pw[e as usize];
                } else if e < 0 {
                    den *= &pw[(-e) as usize];
                }
            }
            let mut hits = Vec::new();
            for sign in [1i32, -1] {
                let n = if sign > 0 { num.clone() } else { -num.clone() };
                // 1 - n/den = (den - n)/den; den is already an S-unit.
                if is_s_unit_int(s, &(&den - &n)) {
                    let x = Rat::new(n, den.clone()).expect("nonzero");
                    let y = Rat::one() - &x;
                    hits.push(TwoTermSolution { x, y });
                }
            }
            hits
        })
        .collect();
    out.sort_by(|a, b| a.x.cmp_num_den(&b.x));
    out
}

/// The values `λ` with both `λ` and `λ - 1` S-units (first coordinates of
/// [`solve_two_term`]), in the same order.
pub fn lambda_set(s: &PrimeSet, bound: u32) -> Vec<Rat> {
    solve_two_term(s, bound).into_iter().map(|sol| sol.x).collect()
}

/// Orbits of a value set under the group generated by `x -> 1 - x` and
/// `x -> 1/x`. Each orbit is sorted by `(numerator, denominator)`; orbits
/// are ordered by their first element.
pub fn s3_orbits(values: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    let set: BTreeSet<Rat> = values.iter().cloned().collect();
    let mut seen: BTreeSet<Rat> = BTreeSet::new();
    let mut orbits = Vec::new();
    for v in &set {
        if seen.contains(v) {
            continue;
        }
        let mut orbit = vec![v.clone()];
        seen.insert(v.clone());
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i].clone();
            let images = [Rat::one() - &x, x.recip().map_err(|_| Error::NotClosed("1/0".into()))?];
            for img in images {
                if !set.contains(&img) {
                    return Err(Error::NotClosed(img.to_string()));
                }
                if seen.insert(img.clone()) {
                    orbit.push(img);
                }
            }
            i += 1;
        }
        orbit.sort_by(Rat::cmp_num_den);
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| a[0].cmp_num_den(&b[0]));
    Ok(orbits)
}
