//! Integer factorization: trial division to 10^6, then Brent's variant of
//! Pollard rho on whatever cofactor remains.

use std::collections::BTreeMap;

use num_bigint::{BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::primality::{is_prime_fast, is_prime_u64, mul_mod};
use super::rat::Int;
use super::sieve::small_primes;
use crate::error::{Error, Result};

/// Prime factorization of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// `-1` or `1`.
    pub sign: i8,
    /// Strictly increasing primes with positive exponents, serialized as
    /// `[prime, exponent]` pairs.
    #[serde(with = "pairs")]
    pub factors: Vec<(Int, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Int {
        let mag = self.factors.iter().fold(Int::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
        if self.sign < 0 {
            -mag
        } else {
            mag
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = &Int> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &Int) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn factor(n: &Int) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();

    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            found.insert(pb, e);
        }
    }
    if !m.is_one() {
        let mut stack = vec![m];
        while let Some(r) = stack.pop() {
            if r.is_one() {
                continue;
            }
            if is_prime_fast(&Int::from(r.clone())) {
                *found.entry(r).or_insert(0) += 1;
                continue;
            }
            let d = split(&r);
            stack.push(&r / &d);
            stack.push(d);
        }
    }
    Ok(Factorization { sign, factors: found.into_iter().map(|(p, e)| (Int::from(p), e)).collect() })
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_support(n: &Int) -> Result<Vec<Int>> {
    Ok(factor(n)?.factors.into_iter().map(|(p, _)| p).collect())
}

/// Number of distinct prime divisors of a positive `u64`.
pub fn omega_u64(n: u64) -> u32 {
    distinct_primes_u64(n).len() as u32
}

pub(crate) fn distinct_primes_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
    }
    if n > 1 {
        if is_prime_u64(n) {
            out.push(n);
        } else {
            let mut stack = vec![n];
            while let Some(r) = stack.pop() {
                if r == 1 {
                    continue;
                }
                if is_prime_u64(r) {
                    out.push(r);
                    continue;
                }
                let d = split_u64(r);
                stack.push(d);
                stack.push(r / d);
            }
            out.sort_unstable();
            out.dedup();
        }
    }
    out
}

/// A nontrivial divisor of the composite `n`, which has no factor below 10^6.
fn split(n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(split_u64(small));
    }
    for k in 2..=4u32 {
        let r = n.nth_root(k);
        if num_traits::pow(r.clone(), k as usize) == *n {
            return r;
        }
    }
    for c in 1u32.. {
        if let Some(d) = brent_big(n, &BigUint::from(c)) {
            return d;
        }
    }
    unreachable!("rho always succeeds for some increment")
}

fn split_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let r = n.sqrt();
    if r * r == n {
        return r;
    }
    for c in 1..64u64 {
        if let Some(d) = brent_u64(n, c) {
            return d;
        }
    }
    // Deterministic fallback.
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let m = 128;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = 0;
    let mut ys = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n && g != 1).then_some(g)
}

fn brent_big(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let m = 128u64;
    let mut y = BigUint::from(2u8);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 36 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n && !g.is_one()).then_some(g)
}

mod pairs {
    use super::Int;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[(Int, u32)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for (p, e) in v {
            seq.serialize_element(&(p.to_string(), e))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Int, u32)>, D::Error> {
        let raw: Vec<(String, u32)> = Vec::deserialize(d)?;
        raw.into_iter().map(|(p, e)| p.parse().map(|p| (p, e)).map_err(serde::de::Error::custom)).collect()
    }
}
