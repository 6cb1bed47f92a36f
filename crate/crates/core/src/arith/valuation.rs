use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::primality::is_prime;
use super::rat::{Int, Rat};
use crate::error::{Error, Result};

/// A p-adic valuation: finite, or infinite for the valuation of zero.
///
/// Ordered with `Infinite` above every finite value; addition saturates at
/// `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValResult {
    Finite(i64),
    Infinite,
}

impl ValResult {
    pub fn is_infinite(self) -> bool {
        matches!(self, ValResult::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ValResult::Finite(v) => Some(v),
            ValResult::Infinite => None,
        }
    }
}

impl PartialOrd for ValResult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValResult {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValResult::Finite(a), ValResult::Finite(b)) => a.cmp(b),
            (ValResult::Finite(_), ValResult::Infinite) => Ordering::Less,
            (ValResult::Infinite, ValResult::Finite(_)) => Ordering::Greater,
            (ValResult::Infinite, ValResult::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for ValResult {
    type Output = ValResult;
    fn add(self, rhs: ValResult) -> ValResult {
        match (self, rhs) {
            (ValResult::Finite(a), ValResult::Finite(b)) => ValResult::Finite(a.saturating_add(b)),
            _ => ValResult::Infinite,
        }
    }
}

impl fmt::Display for ValResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValResult::Finite(v) => write!(f, "{v}"),
            ValResult::Infinite => write!(f, "inf"),
        }
    }
}

/// `v_p(x)`; fails with `NonPrimeModulus` unless `p` is a positive prime.
pub fn val(p: &Int, x: &Rat) -> Result<ValResult> {
    if *p <= Int::one() || !is_prime(p)?.0 {
        return Err(Error::NonPrimeModulus(p.to_string()));
    }
    Ok(valuation(p, x))
}

/// `v_p(x)` without checking that `p` is prime.
pub fn valuation(p: &Int, x: &Rat) -> ValResult {
    if x.is_zero() {
        return ValResult::Infinite;
    }
    ValResult::Finite(int_valuation(p, x.numer()) as i64 - int_valuation(p, x.denom()) as i64)
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn int_valuation(p: &Int, n: &Int) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// Exponent of the small prime `p` in the nonzero integer `n`.
pub(crate) fn int_valuation_u64(p: u64, n: &Int) -> u64 {
    let mut n = n.clone();
    let mut e = 0;
    while (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}
