use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::factor;
use super::rat::Int;

/// Euler's totient of `d >= 1`. Returns 0 for `d <= 0`.
pub fn totient(d: &Int) -> Int {
    if *d <= Int::zero() {
        return Int::zero();
    }
    let f = factor(d).expect("nonzero");
    f.factors.iter().fold(Int::one(), |acc, (p, e)| acc * (p - 1u32) * num_traits::pow(p.clone(), (*e - 1) as usize))
}

pub fn totient_u64(d: u64) -> u64 {
    use num_traits::ToPrimitive;
    totient(&Int::from(d)).to_u64().unwrap_or(0)
}

/// Kronecker symbol `(D / p)` for an odd prime `p`, which is the Legendre symbol.
pub fn kronecker_odd_prime(d: i64, p: u64) -> i32 {
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = super::primality::pow_mod(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let n = n.unsigned_abs();
    let mut m = n;
    let mut q = 2u64;
    while q * q <= m {
        if m.is_multiple_of(q) {
            m /= q;
            if m.is_multiple_of(q) {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_coeffs(n: u64) -> Vec<Int> {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![Int::zero(); n as usize + 1];
    poly[0] = Int::from(-1);
    poly[n as usize] = Int::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &cyclotomic_coeffs(d));
        }
    }
    poly
}

fn exact_div_monic(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem: Vec<Int> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![Int::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// Evaluates a polynomial (constant term first) at an integer.
pub fn eval_poly(coeffs: &[Int], x: &Int) -> Int {
    coeffs.iter().rev().fold(Int::zero(), |acc, c| acc * x + c)
}

pub fn cyclotomic_value(n: u64, x: &Int) -> Int {
    eval_poly(&cyclotomic_coeffs(n), x)
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * k)
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a Int>) -> Int {
    it.into_iter().fold(Int::one(), |acc, x| acc.lcm(x))
}
