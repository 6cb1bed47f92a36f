//! Lower and upper bounds on `c_K(g)`, the least `n` such that infinitely
//! many genus-g curves over `K` with rational Weierstrass points have
//! potentially good reduction outside some set of `n` primes.
//!
//! Only the lower bound is unconditional. The upper bounds assume the prime
//! k-tuples conjecture or Schinzel's hypothesis H, or are asymptotic.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, is_squarefree, kronecker_odd_prime, pi, primes_upto, Int, Rat};
use crate::error::{Error, Result};

/// A number field, described only as far as the bounds need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Rationals,
    /// `Q(sqrt d)` for squarefree `d`; `discriminant` is `d` or `4d`.
    Quadratic {
        d: i64,
        discriminant: i64,
    },
    /// Abelian of prime degree `n` and conductor `f`, with no proper subfield
    /// other than `Q`.
    AbelianPrime {
        n: u64,
        f: u64,
    },
    /// Degree `n` whose maximal abelian subfield is `Q`.
    PrimitiveNonAbelian {
        n: u64,
    },
}

impl FieldDescriptor {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::UnsupportedField(format!("quad:{d} (need squarefree d other than 0, 1)")));
        }
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(FieldDescriptor::Quadratic { d, discriminant })
    }

    pub fn abelian_prime(n: u64, f: u64) -> Result<Self> {
        if !is_prime_u64(n) || f < 3 {
            return Err(Error::UnsupportedField(format!("abp:{n}:{f} (need prime degree and conductor >= 3)")));
        }
        Ok(FieldDescriptor::AbelianPrime { n, f })
    }

    pub fn primitive_non_abelian(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedField(format!("pna:{n} (need degree >= 2)")));
        }
        Ok(FieldDescriptor::PrimitiveNonAbelian { n })
    }

    pub fn degree(&self) -> u64 {
        match *self {
            FieldDescriptor::Rationals => 1,
            FieldDescriptor::Quadratic { .. } => 2,
            FieldDescriptor::AbelianPrime { n, .. } | FieldDescriptor::PrimitiveNonAbelian { n } => n,
        }
    }

    /// Degree and conductor for the abelian cases; quadratic fields have
    /// conductor `|D|`.
    fn abelian_data(&self) -> Option<(u64, u64)> {
        match *self {
            FieldDescriptor::Quadratic { discriminant, .. } => Some((2, discriminant.unsigned_abs())),
            FieldDescriptor::AbelianPrime { n, f } => Some((n, f)),
            _ => None,
        }
    }
}

/// `q`, `quad:d`, `abp:n:f` or `pna:n`.
impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad field descriptor {s:?}")));
        let unsigned =
            |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad field descriptor {s:?}")));
        match parts.as_slice() {
            ["q"] | ["Q"] => Ok(FieldDescriptor::Rationals),
            ["quad", d] => FieldDescriptor::quadratic(num(d)?),
            ["abp", n, f] => FieldDescriptor::abelian_prime(unsigned(n)?, unsigned(f)?),
            ["pna", n] => FieldDescriptor::primitive_non_abelian(unsigned(n)?),
            _ => Err(Error::Parse(format!("bad field descriptor {s:?}; expected q, quad:d, abp:n:f or pna:n"))),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldDescriptor::Rationals => write!(f, "q"),
            FieldDescriptor::Quadratic { d, .. } => write!(f, "quad:{d}"),
            FieldDescriptor::AbelianPrime { n, f: c } => write!(f, "abp:{n}:{c}"),
            FieldDescriptor::PrimitiveNonAbelian { n } => write!(f, "pna:{n}"),
        }
    }
}

/// Number of prime ideals of `K` above odd rational primes with norm at
/// most `x`.
pub fn pi_odd(k: &FieldDescriptor, x: u64) -> Result<u64> {
    match *k {
        FieldDescriptor::Rationals => Ok(pi(x).saturating_sub(u64::from(x >= 2))),
        FieldDescriptor::Quadratic { discriminant, .. } => {
            Ok(primes_upto(x).into_iter().filter(|&p| p != 2).map(|p| quadratic_contribution(discriminant, p, x)).sum())
        }
        _ => Err(Error::UnsupportedField(format!("{k}: splitting of primes is not determined by the descriptor"))),
    }
}

/// Ideals of norm at most `x` above the odd prime `p` in the quadratic field
/// of discriminant `disc`.
pub fn quadratic_contribution(disc: i64, p: u64, x: u64) -> u64 {
    if disc.unsigned_abs().is_multiple_of(p) {
        return 1;
    }
    match kronecker_odd_prime(disc, p) {
        1 => 2,
        _ => u64::from(p.checked_mul(p).is_some_and(|q| q <= x)),
    }
}

/// `pi_odd(K, 2g) + 2`, the least value allowed by `c_K(g) > pi_odd(K, 2g) + 1`.
pub fn lower_bound(k: &FieldDescriptor, g: u64) -> Result<u64> {
    Ok(pi_odd(k, 2 * g)? + 2)
}

/// `2g - 1 + n pi(2g)`, assuming prime k-tuples.
pub fn upper_dickson(n: u64, g: u64) -> u64 {
    2 * g - 1 + n * pi(2 * g)
}

/// Leading term `(2 / log 2) n g log g = 2 n g log2(g)` of the unconditional
/// asymptotic bound, with the `o(1)` dropped. Not a bound at any fixed `g`.
pub fn upper_linearithmic(n: u64, g: u64) -> f64 {
    2.0 * n as f64 * g as f64 * (g as f64).log2()
}

/// `{1 <= d < g} ∪ {d even, d < 2g}`, ascending.
pub fn d_index_set(g: u64) -> Vec<u64> {
    (1..2 * g).filter(|&d| d < g || d % 2 == 0).collect()
}

/// `[K(ζ_d) : Q(ζ_d)]`.
pub fn cyclotomic_relative_degree(k: &FieldDescriptor, d: u64) -> u64 {
    match (k, k.abelian_data()) {
        (FieldDescriptor::Rationals, _) => 1,
        (_, Some((n, f))) => {
            if d.is_multiple_of(f) {
                1
            } else {
                n
            }
        }
        (_, None) => k.degree(),
    }
}

/// `sum_{d in D(g)} n / [K(ζ_d) : Q(ζ_d)] + 1 + n pi(2g)`, assuming hypothesis H.
pub fn upper_schinzel_exact(k: &FieldDescriptor, g: u64) -> u64 {
    let n = k.degree();
    let sum: u64 = d_index_set(g).into_iter().map(|d| n / cyclotomic_relative_degree(k, d)).sum();
    sum + 1 + n * pi(2 * g)
}

/// Closed forms for abelian prime-degree fields (odd or even conductor) and
/// for fields whose maximal abelian subfield is `Q`.
pub fn upper_corollary(k: &FieldDescriptor, g: u64) -> Result<Rat> {
    let n = k.degree();
    let tail = ratu(n * pi(2 * g));
    let three_halves_g = ratu(3u64 * g) / ratu(2u64);
    match (k, k.abelian_data()) {
        (FieldDescriptor::PrimitiveNonAbelian { .. }, _) => Ok(three_halves_g + tail),
        (FieldDescriptor::Rationals, _) | (_, None) => {
            Err(Error::UnsupportedField(format!("{k}: no closed form applies")))
        }
        (_, Some((n, f))) => {
            let frac = if f % 2 == 1 { ratu(n - 1) / ratu(f) } else { ratu(4 * (n - 1)) / ratu(3 * f) };
            Ok(three_halves_g * (ratu(1u64) + frac) + ratu(1u64) + tail)
        }
    }
}

fn ratu(n: u64) -> Rat {
    Rat::from(Int::from(n))
}

/// What a reported value depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Unconditional,
    PrimeKTuples,
    HypothesisH,
    AsymptoticOnly,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Unconditional => "unconditional",
            Condition::PrimeKTuples => "conditional on prime k-tuples",
            Condition::HypothesisH => "conditional on hypothesis H",
            Condition::AsymptoticOnly => "asymptotic leading term only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub condition: Condition,
}

fn tag<T>(value: T, condition: Condition) -> Tagged<T> {
    Tagged { value, condition }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub field: FieldDescriptor,
    pub g: u64,
    pub degree: u64,
    pub lower: Option<Tagged<u64>>,
    /// Why `lower` is missing, if it is.
    pub lower_unavailable: Option<String>,
    pub upper_dickson: Tagged<u64>,
    pub upper_linearithmic: Tagged<f64>,
    pub upper_schinzel_exact: Tagged<u64>,
    pub upper_corollary: Option<Tagged<Rat>>,
}

impl BoundsReport {
    /// `lower` does not exceed any finite conditional upper value.
    pub fn is_consistent(&self) -> bool {
        let Some(lo) = &self.lower else { return true };
        let lo = lo.value;
        lo <= self.upper_dickson.value
            && lo <= self.upper_schinzel_exact.value
            && self.upper_corollary.as_ref().is_none_or(|c| ratu(lo) <= c.value)
    }
}

pub fn bounds_report(k: &FieldDescriptor, g: u64) -> Result<BoundsReport> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g}")));
    }
    let n = k.degree();
    let (lower, lower_unavailable) = match lower_bound(k, g) {
        Ok(v) => (Some(tag(v, Condition::Unconditional)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(BoundsReport {
        field: *k,
        g,
        degree: n,
        lower,
        lower_unavailable,
        upper_dickson: tag(upper_dickson(n, g), Condition::PrimeKTuples),
        upper_linearithmic: tag(upper_linearithmic(n, g), Condition::AsymptoticOnly),
        upper_schinzel_exact: tag(upper_schinzel_exact(k, g), Condition::HypothesisH),
        upper_corollary: upper_corollary(k, g).ok().map(|v| tag(v, Condition::HypothesisH)),
    })
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {} (degree {}), genus {}", self.field, self.degree, self.g)?;
        match (&self.lower, &self.lower_unavailable) {
            (Some(t), _) => writeln!(f, "lower               {:>12}  {}", t.value, t.condition)?,
            (None, Some(why)) => writeln!(f, "lower               {:>12}  {why}", "n/a")?,
            (None, None) => {}
        }
        let d = &self.upper_dickson;
        writeln!(f, "upper dickson       {:>12}  {}", d.value, d.condition)?;
        let s = &self.upper_schinzel_exact;
        writeln!(f, "upper schinzel      {:>12}  {}", s.value, s.condition)?;
        if let Some(c) = &self.upper_corollary {
            let approx = c.value.as_big_rational().to_f64().unwrap_or(f64::NAN);
            writeln!(f, "upper corollary     {:>12}  {} (~{approx:.2})", c.value.to_string(), c.condition)?;
        }
        let l = &self.upper_linearithmic;
        write!(f, "upper linearithmic  {:>12.2}  {}", l.value, l.condition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn abp(n: u64, f: u64) -> FieldDescriptor {
        FieldDescriptor::abelian_prime(n, f).unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["q", "quad:-1", "quad:5", "abp:3:7", "pna:5"] {
            assert_eq!(s.parse::<FieldDescriptor>().unwrap().to_string(), s);
        }
        assert_eq!(
            "quad:-1".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Quadratic { d: -1, discriminant: -4 }
        );
        assert_eq!("quad:5".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Quadratic { d: 5, discriminant: 5 });
        assert!("quad:4".parse::<FieldDescriptor>().is_err());
        assert!("quad:1".parse::<FieldDescriptor>().is_err());
        assert!("abp:4:7".parse::<FieldDescriptor>().is_err());
        assert!("pna:1".parse::<FieldDescriptor>().is_err());
        assert!(matches!("cubic".parse::<FieldDescriptor>(), Err(Error::Parse(_))));
    }

    #[test]
    fn prime_ideal_counts() {
        assert_eq!(pi_odd(&Q, 4).unwrap(), 1);
        assert_eq!(pi_odd(&Q, 10).unwrap(), 3);
        assert_eq!(pi_odd(&Q, 2).unwrap(), 0);
        assert_eq!(pi_odd(&Q, 1).unwrap(), 0);
        let gi = FieldDescriptor::quadratic(-1).unwrap();
        assert_eq!(pi_odd(&gi, 10).unwrap(), 3);
        assert!(matches!(pi_odd(&abp(3, 7), 10), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn lower_and_dickson() {
        assert_eq!(lower_bound(&Q, 2).unwrap(), 3);
        assert_eq!(lower_bound(&Q, 5).unwrap(), 5);
        assert_eq!(lower_bound(&FieldDescriptor::quadratic(-1).unwrap(), 5).unwrap(), 5);
        assert_eq!(upper_dickson(1, 2), 5);
        assert_eq!(upper_dickson(1, 5), 13);
        assert_eq!(upper_dickson(3, 2), 9);
    }

    #[test]
    fn linearithmic_exact_at_powers_of_two() {
        assert_eq!(upper_linearithmic(1, 2), 4.0);
        assert_eq!(upper_linearithmic(1, 4), 16.0);
        assert_eq!(upper_linearithmic(1, 8), 48.0);
    }

    #[test]
    fn index_sets_and_degrees() {
        assert_eq!(d_index_set(2), vec![1, 2]);
        assert_eq!(d_index_set(3), vec![1, 2, 4]);
        assert_eq!(d_index_set(5), vec![1, 2, 3, 4, 6, 8]);
        assert_eq!(cyclotomic_relative_degree(&Q, 12), 1);
        assert_eq!(cyclotomic_relative_degree(&abp(3, 7), 14), 1);
        assert_eq!(cyclotomic_relative_degree(&abp(3, 7), 10), 3);
        let q5 = FieldDescriptor::quadratic(5).unwrap();
        assert_eq!(cyclotomic_relative_degree(&q5, 10), 1);
        assert_eq!(cyclotomic_relative_degree(&q5, 4), 2);
    }

    #[test]
    fn schinzel_and_corollaries() {
        assert_eq!(upper_schinzel_exact(&Q, 5), 11);
        assert_eq!(upper_schinzel_exact(&Q, 2), 5);
        assert_eq!(upper_schinzel_exact(&abp(3, 7), 10), 43);
        assert_eq!(upper_corollary(&abp(3, 7), 10).unwrap(), rat(310, 7));
        let pna = FieldDescriptor::primitive_non_abelian(5).unwrap();
        assert_eq!(upper_corollary(&pna, 4).unwrap(), rat(26, 1));
        assert_eq!(upper_corollary(&abp(2, 8), 4).unwrap(), rat(16, 1));
        assert!(matches!(upper_corollary(&Q, 4), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn reports() {
        let r = bounds_report(&Q, 2).unwrap();
        assert_eq!((r.lower.unwrap().value, r.upper_dickson.value, r.upper_schinzel_exact.value), (3, 5, 5));
        let r = bounds_report(&Q, 5).unwrap();
        assert_eq!((r.lower.as_ref().unwrap().value, r.upper_dickson.value, r.upper_schinzel_exact.value), (5, 13, 11));
        assert!(r.is_consistent());
        let r = bounds_report(&Q, 3).unwrap();
        assert_eq!((r.lower.unwrap().value, r.upper_dickson.value, r.upper_schinzel_exact.value), (4, 8, 7));
        let r = bounds_report(&abp(3, 7), 10).unwrap();
        assert!(r.lower.is_none() && r.lower_unavailable.is_some());
        assert!(r.upper_corollary.is_some());
    }
}
