use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Serializes as the string `"num/den"` (or `"num"` when the denominator is
/// one) so that values never pass through a float.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<Int>, den: impl Into<Int>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<Int>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn pow(&self, e: i32) -> Rat {
        Rat(num_traits::Pow::pow(&self.0, e))
    }

    /// Height `max(|num|, den)`.
    pub fn height(&self) -> Int {
        let n = self.numer().abs();
        let d = self.denom().clone();
        if n > d {
            n
        } else {
            d
        }
    }

    /// Lexicographic `(numerator, denominator)` ordering, used for stable
    /// output order of solution lists.
    pub fn cmp_num_den(&self, other: &Rat) -> Ordering {
        self.numer().cmp(other.numer()).then_with(|| self.denom().cmp(other.denom()))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<Int> for Rat {
    fn from(n: Int) -> Self {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| t.trim().parse::<Int>().map_err(|_| Error::Parse(format!("not a rational: {s:?}")));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rat(BigRational::new(parse_int(n)?, d)))
            }
            None => Ok(Rat::from_int(parse_int(s)?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying BigRational.
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Shorthand for building rationals in tests and examples: `rat(3, 4)`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &Int::from(-3));
        assert_eq!(r.denom(), &Int::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(rat(8, 4).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "9/8", "-1/3", "123456789012345678901234567891/2"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/2".parse::<Rat>().unwrap(), Rat::from(2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let r = rat(-9, 8);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"-9/8\"");
        let back: Rat = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn num_den_order() {
        let mut v = vec![rat(1, 2), rat(-1, 1), rat(1, 3), rat(-1, 2)];
        v.sort_by(Rat::cmp_num_den);
        assert_eq!(v, vec![rat(-1, 1), rat(-1, 2), rat(1, 2), rat(1, 3)]);
    }
}
