use std::collections::BTreeSet;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::search::{scan, ScanSpec, SearchControl, SearchOutcome};
use super::{ConstructionMode, FamilyKind, FamilyWitness, Verdict};
use crate::arith::{
    cyclotomic_coeffs, eval_poly, factorial, is_prime, is_prime_fast, is_prime_u64, prime_support, primes_upto,
    totient_u64, Int, PrimalityCertificate, Rat,
};
use crate::bounds::{d_index_set, upper_dickson, upper_schinzel_exact, FieldDescriptor};
use crate::curves::{bad_odd_primes, RosenhainCurve};
use crate::error::{Error, Result};

pub const GENUS5_ALPHA: u64 = 5040;
pub const GENUS5_BUDGET: u64 = 10;

/// Offsets `0, (2g)!, 2 (2g)!, ..., (2g - 2)(2g)!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleTuple {
    pub g: usize,
    #[serde(with = "int_list")]
    pub offsets: Vec<Int>,
    /// No prime `q` sees every residue class among the offsets.
    pub admissible: bool,
}

pub fn admissible_tuple(g: usize) -> AdmissibleTuple {
    let step = factorial(2 * g as u64);
    let offsets: Vec<Int> = (0..2 * g - 1).map(|i| &step * i).collect();
    let admissible = primes_upto(offsets.len() as u64).into_iter().all(|q| {
        let residues: BTreeSet<Int> = offsets.iter().map(|h| h % q).collect();
        (residues.len() as u64) < q
    });
    AdmissibleTuple { g, offsets, admissible }
}

/// `p + h_i` for the offsets of [`admissible_tuple`].
pub fn tuple_members(g: usize, p: &Int) -> Vec<Int> {
    admissible_tuple(g).offsets.iter().map(|h| p + h).collect()
}

/// `0`, the constellation, and the last root chosen by `mode`.
pub fn tuple_roots(g: usize, p: &Int, mode: ConstructionMode) -> Vec<Int> {
    let step = factorial(2 * g as u64);
    let last = match mode {
        ConstructionMode::Corrected => Int::from(2) * p + step * (2 * g - 2),
        ConstructionMode::PaperExact => Int::from(2) * p + step * (2 * g),
    };
    let mut roots = vec![Int::from(0)];
    roots.extend(tuple_members(g, p));
    roots.push(last);
    roots
}

/// Certificates for each labelled value, or a description of every failure.
fn certify_all(items: &[(String, Int)]) -> Result<Vec<PrimalityCertificate>> {
    let mut certs = Vec::with_capacity(items.len());
    let mut failures = Vec::new();
    for (label, n) in items {
        if *n <= Int::one() {
            failures.push(format!("{label}={n} is not prime"));
            continue;
        }
        let (prime, cert) = is_prime(n)?;
        if !prime {
            failures.push(format!("{label}={n} is composite"));
        }
        certs.push(cert);
    }
    if failures.is_empty() {
        Ok(certs)
    } else {
        Err(Error::NotAConstellation(failures.join("; ")))
    }
}

fn assemble(
    kind: FamilyKind,
    g: usize,
    parameter: &Int,
    mode: ConstructionMode,
    roots: Vec<Int>,
    budget: u64,
    certificates: Vec<PrimalityCertificate>,
) -> Result<FamilyWitness> {
    let curve = RosenhainCurve::new(roots.into_iter().map(Rat::from).collect())?;
    let bad_primes = bad_odd_primes(&curve);
    let verdict = if bad_primes.count_with_two() as u64 <= budget { Verdict::Pass } else { Verdict::Fail };
    Ok(FamilyWitness { kind, g, parameter: parameter.clone(), mode, curve, bad_primes, budget, certificates, verdict })
}

fn check_genus(g: usize) -> Result<()> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g}")));
    }
    Ok(())
}

/// Tuple curve for the prime `p`; budget `2g - 1 + pi(2g)`.
pub fn build_tuple_curve(g: usize, p: &Int, mode: ConstructionMode) -> Result<FamilyWitness> {
    check_genus(g)?;
    let labelled: Vec<(String, Int)> =
        admissible_tuple(g).offsets.iter().map(|h| (format!("{p}+{h}"), p + h)).collect();
    let certs = certify_all(&labelled)?;
    let budget = upper_dickson(1, g as u64);
    assemble(FamilyKind::Tuple, g, p, mode, tuple_roots(g, p, mode), budget, certs)
}

pub fn find_tuple_witness(g: usize, limit: u64) -> Option<u64> {
    find_tuple_witness_with(g, limit, &SearchControl::default()).ok()?.found()
}

/// Least prime `p <= limit` with every `p + h_i` prime.
pub fn find_tuple_witness_with(g: usize, limit: u64, ctl: &SearchControl) -> Result<SearchOutcome> {
    check_genus(g)?;
    let offsets: Vec<Int> = admissible_tuple(g).offsets.into_iter().skip(1).collect();
    let alpha = factorial(2 * g as u64).to_string();
    let spec = ScanSpec { kind: FamilyKind::Tuple, g, alpha: &alpha, first: 2, limit };
    scan(&spec, ctl, |p| is_prime_u64(p) && offsets.iter().all(|h| is_prime_fast(&(h + p))))
}

/// `(i, Φ_i(α k))` for `i` in the index set, `α = (2g)!`.
pub fn cyclotomic_members(g: usize, k: &Int) -> Vec<(u64, Int)> {
    let x = factorial(2 * g as u64) * k;
    d_index_set(g as u64).into_iter().map(|i| (i, eval_poly(&cyclotomic_coeffs(i), &x))).collect()
}

pub fn cyclotomic_roots(g: usize, k: &Int) -> Vec<Int> {
    let x = factorial(2 * g as u64) * k;
    let mut roots = vec![Int::from(0)];
    let mut power = Int::one();
    for _ in 0..g {
        roots.push(power.clone());
        roots.push(-power.clone());
        power *= &x;
    }
    roots
}

/// Cyclotomic curve for `k`; budget is the exact Schinzel sum over `Q`.
pub fn build_cyclotomic_curve(g: usize, k: &Int) -> Result<FamilyWitness> {
    check_genus(g)?;
    let alpha = factorial(2 * g as u64);
    let mut labelled = vec![("k".to_string(), k.clone())];
    labelled.extend(cyclotomic_members(g, k).into_iter().map(|(i, v)| (format!("Φ_{i}({})", &alpha * k), v)));
    let certs = certify_all(&labelled)?;
    let budget = upper_schinzel_exact(&FieldDescriptor::Rationals, g as u64);
    assemble(FamilyKind::Cyclotomic, g, k, ConstructionMode::Corrected, cyclotomic_roots(g, k), budget, certs)
}

pub fn find_cyclotomic_witness(g: usize, limit: u64) -> Option<u64> {
    find_cyclotomic_witness_with(g, limit, &SearchControl::default()).ok()?.found()
}

/// Least prime `k <= limit` with `Φ_i((2g)! k)` prime for every index `i`.
pub fn find_cyclotomic_witness_with(g: usize, limit: u64, ctl: &SearchControl) -> Result<SearchOutcome> {
    check_genus(g)?;
    let alpha = factorial(2 * g as u64);
    let mut polys: Vec<(u64, Vec<Int>)> =
        d_index_set(g as u64).into_iter().map(|i| (totient_u64(i), cyclotomic_coeffs(i))).collect();
    polys.sort_by_key(|(deg, _)| *deg);
    let alpha_s = alpha.to_string();
    let spec = ScanSpec { kind: FamilyKind::Cyclotomic, g, alpha: &alpha_s, first: 2, limit };
    scan(&spec, ctl, |k| {
        if !is_prime_u64(k) {
            return false;
        }
        let x = &alpha * k;
        polys.iter().all(|(_, c)| is_prime_fast(&eval_poly(c, &x)))
    })
}

/// `(label, value)` for `k`, `m - 1`, `m + 1`, `m^2 + 1`, `m^2 - 2m - 1` and
/// `m^2 + 2m - 1`, where `m = 5040 k`.
pub fn genus5_conditions(k: &Int) -> Vec<(String, Int)> {
    let m = k * GENUS5_ALPHA;
    let m2 = &m * &m;
    let one = Int::one();
    vec![
        ("k".into(), k.clone()),
        ("m-1".into(), &m - &one),
        ("m+1".into(), &m + &one),
        ("m^2+1".into(), &m2 + &one),
        ("m^2-2m-1".into(), &m2 - &m * 2 - &one),
        ("m^2+2m-1".into(), &m2 + &m * 2 - &one),
    ]
}

/// `0, ±m^2 uv, ±m uv, ±uv, ±m u^2, ±m v^2` with `u = m - 1`, `v = m + 1`.
pub fn genus5_roots(m: &Int) -> Vec<Int> {
    let u: Int = m - 1;
    let v: Int = m + 1;
    let uv = &u * &v;
    let base = [m * m * &uv, m * &uv, uv.clone(), m * &u * &u, m * &v * &v];
    let mut roots = vec![Int::from(0)];
    for r in base {
        roots.push(-r.clone());
        roots.push(r);
    }
    roots
}

/// Genus-5 curve for `k`; budget 10.
pub fn build_genus5_curve(k: &Int) -> Result<FamilyWitness> {
    let certs = certify_all(&genus5_conditions(k))?;
    let m = k * GENUS5_ALPHA;
    assemble(FamilyKind::Genus5, 5, k, ConstructionMode::Corrected, genus5_roots(&m), GENUS5_BUDGET, certs)
}

pub fn find_genus5_witness(limit: u64) -> Option<u64> {
    find_genus5_witness_with(limit, &SearchControl::default()).ok()?.found()
}

/// Least `k <= limit` meeting all of [`genus5_conditions`].
pub fn find_genus5_witness_with(limit: u64, ctl: &SearchControl) -> Result<SearchOutcome> {
    let alpha = GENUS5_ALPHA.to_string();
    let spec = ScanSpec { kind: FamilyKind::Genus5, g: 5, alpha: &alpha, first: 2, limit };
    scan(&spec, ctl, |k| {
        if !is_prime_u64(k) {
            return false;
        }
        // Ordered cheapest first.
        genus5_conditions(&Int::from(k)).iter().skip(1).all(|(_, n)| is_prime_fast(n))
    })
}

/// The `k <= limit` minimizing the number of distinct primes dividing
/// `prod (k + h_i) * (2k + (2g - 2)(2g)!)`, least `k` on ties.
pub fn low_omega_search(g: usize, limit: u64) -> Option<(u64, u32)> {
    let offsets = admissible_tuple(g).offsets;
    let tail = factorial(2 * g as u64) * (2 * g - 2);
    (1..=limit)
        .into_par_iter()
        .map(|k| {
            let k_int = Int::from(k);
            let mut primes: BTreeSet<Int> = BTreeSet::new();
            let mut values: Vec<Int> = offsets.iter().map(|h| h + &k_int).collect();
            values.push(&k_int * 2 + &tail);
            for v in values {
                if !v.is_one() {
                    primes.extend(prime_support(&v).expect("positive"));
                }
            }
            (primes.len() as u32, k)
        })
        .min()
        .map(|(omega, k)| (k, omega))
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
