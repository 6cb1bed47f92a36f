//! Primality testing.
//!
//! Below 2^64 the answer is deterministic: trial division for tiny inputs,
//! otherwise Miller–Rabin with a base set proven sufficient for every 64-bit
//! integer. Above 2^64 the test is Baillie–PSW (strong base-2 Miller–Rabin
//! plus a strong Lucas test) followed by [`PROBABILISTIC_ROUNDS`] extra
//! Miller–Rabin rounds at bases drawn from a generator seeded by `n`, so every
//! verdict is reproducible.

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rat::Int;
use super::sieve::small_primes;
use crate::error::{Error, Result};

/// Extra Miller–Rabin rounds run above 2^64.
pub const PROBABILISTIC_ROUNDS: u32 = 64;

/// Inputs below this are decided by trial division.
const SMALL_LIMIT: u64 = 1 << 20;

/// Jim Sinclair's base set; deterministic for all n < 2^64.
const MR64_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PrimalityMethod {
    DeterministicSmall,
    #[serde(rename = "deterministic-MR-64bit")]
    DeterministicMr64,
    /// Baillie–PSW plus `rounds` seeded Miller–Rabin rounds.
    #[serde(rename = "probabilistic-MR+strong-lucas")]
    ProbabilisticMr {
        rounds: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Witness {
    /// No compositeness witness (verdict prime).
    None,
    /// A nontrivial divisor.
    #[serde(with = "int_string")]
    Divisor(Int),
    /// A Miller–Rabin base the input fails.
    #[serde(with = "int_string")]
    MrBase(Int),
    /// The strong Lucas test failed for Selfridge parameter `D`.
    Lucas(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityCertificate {
    #[serde(with = "int_string")]
    pub n: Int,
    pub prime: bool,
    pub method: PrimalityMethod,
    pub witness: Witness,
}

impl PrimalityCertificate {
    /// Recomputes the test from scratch and compares.
    pub fn verify(&self) -> bool {
        match certify(&self.n) {
            Ok(fresh) => fresh == *self,
            Err(_) => false,
        }
    }
}

/// Primality with a certificate recording how the verdict was reached.
pub fn is_prime(n: &Int) -> Result<(bool, PrimalityCertificate)> {
    let cert = certify(n)?;
    Ok((cert.prime, cert))
}

fn certify(n: &Int) -> Result<PrimalityCertificate> {
    if *n <= Int::one() {
        return Err(Error::OutOfRange(format!("primality of {n} (need n > 1)")));
    }
    let (prime, method, witness) = match n.to_u64() {
        Some(m) if m < SMALL_LIMIT => {
            let w = smallest_divisor_trial(m);
            let witness = match w {
                Some(d) => Witness::Divisor(Int::from(d)),
                None => Witness::None,
            };
            (w.is_none(), PrimalityMethod::DeterministicSmall, witness)
        }
        Some(m) => {
            let witness = match mr64_witness(m) {
                Some(b) => Witness::MrBase(Int::from(b)),
                None => Witness::None,
            };
            (witness == Witness::None, PrimalityMethod::DeterministicMr64, witness)
        }
        None => {
            let u = n.magnitude();
            let witness = big_witness(u);
            (witness == Witness::None, PrimalityMethod::ProbabilisticMr { rounds: PROBABILISTIC_ROUNDS }, witness)
        }
    };
    Ok(PrimalityCertificate { n: n.clone(), prime, method, witness })
}

/// Fast boolean primality for search loops; same verdicts as [`is_prime`]
/// except that the extra probabilistic rounds are skipped above 2^64
/// (Baillie–PSW only).
pub fn is_prime_fast(n: &Int) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    match n.to_u64() {
        Some(m) => is_prime_u64(m),
        None => {
            let u = n.magnitude();
            trial_small(u).is_none() && bpsw_witness(u).is_none()
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    mr64_witness(n).is_none()
}

fn smallest_divisor_trial(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return if n == 2 { None } else { Some(2) };
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 2;
    }
    None
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn mr64_witness(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return if n == 2 { None } else { Some(2) };
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &MR64_BASES {
        let a = b % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return Some(b);
    }
    None
}

fn trial_small(n: &BigUint) -> Option<Int> {
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() && *n != BigUint::from(p) {
            return Some(Int::from(p));
        }
    }
    None
}

fn mr_big_fails(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return false;
        }
    }
    true
}

fn bpsw_witness(n: &BigUint) -> Option<Witness> {
    let two = BigUint::from(2u8);
    if mr_big_fails(n, &two) {
        return Some(Witness::MrBase(Int::from(2)));
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return Some(Witness::Divisor(BigInt::from(r)));
    }
    strong_lucas_fails(n).map(Witness::Lucas)
}

fn big_witness(n: &BigUint) -> Witness {
    if let Some(d) = trial_small(n) {
        return Witness::Divisor(d);
    }
    if let Some(w) = bpsw_witness(n) {
        return w;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(n));
    let lo = BigUint::from(2u8);
    let hi = n - 1u32;
    for _ in 0..PROBABILISTIC_ROUNDS {
        let a = rng.gen_biguint_range(&lo, &hi);
        if mr_big_fails(n, &a) {
            return Witness::MrBase(BigInt::from(a));
        }
    }
    Witness::None
}

fn seed_for(n: &BigUint) -> u64 {
    n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |h, d| (h ^ d).wrapping_mul(0x1000_0000_01b3).rotate_left(17))
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &Int, n: &Int) -> i32 {
    assert!(n.is_odd() && n.sign() == Sign::Plus, "jacobi needs odd positive n");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = Int::from(3);
    let five = Int::from(5);
    let eight = Int::from(8);
    let four = Int::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters. Returns the
/// `D` used when `n` fails. Assumes `n` odd, not a perfect square, and free
/// of tiny factors.
fn strong_lucas_fails(n: &BigUint) -> Option<i64> {
    let nn = BigInt::from(n.clone());
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&Int::from(d), &nn);
        if j == -1 {
            break;
        }
        if j == 0 && Int::from(d.abs()) != nn {
            return Some(d);
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let p = Int::one();
    let q = Int::from((1 - d) / 4);
    let dd = Int::from(d);
    let m = |x: Int| x.mod_floor(&nn);
    let half = |x: Int| {
        let x = x.mod_floor(&nn);
        if x.is_odd() {
            (x + &nn) >> 1
        } else {
            x >> 1
        }
    };

    let np1: Int = &nn + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let bits = k.bits();

    let mut u = Int::one();
    let mut v = p.clone();
    let mut qk = m(q.clone());
    for i in (0..bits - 1).rev() {
        u = m(&u * &v);
        v = m(&v * &v - 2 * &qk);
        qk = m(&qk * &qk);
        if k.bit(i) {
            let u1 = half(&p * &u + &v);
            let v1 = half(&dd * &u + &p * &v);
            u = u1;
            v = v1;
            qk = m(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return None;
    }
    for _ in 1..s {
        v = m(&v * &v - 2 * &qk);
        if v.is_zero() {
            return None;
        }
        qk = m(&qk * &qk);
    }
    Some(d)
}

pub(crate) mod int_string {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
