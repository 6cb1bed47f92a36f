use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

/// A hyperelliptic curve `y^2 = c * prod (x - r)` over the rationals with
/// `2g + 1` distinct rational roots; infinity is the remaining Weierstrass
/// point.
///
/// Roots are stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct RosenhainCurve {
    genus: usize,
    twist: Rat,
    roots: Vec<Rat>,
}

#[derive(Deserialize)]
struct RawCurve {
    genus: usize,
    twist: Rat,
    roots: Vec<Rat>,
}

impl TryFrom<RawCurve> for RosenhainCurve {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        let curve = RosenhainCurve::with_twist(raw.twist, raw.roots)?;
        if curve.genus != raw.genus {
            return Err(Error::InvalidCurve(format!("genus {} does not match {} roots", raw.genus, curve.roots.len())));
        }
        Ok(curve)
    }
}

impl RosenhainCurve {
    /// Curve with twist 1.
    pub fn new(roots: Vec<Rat>) -> Result<Self> {
        Self::with_twist(Rat::one(), roots)
    }

    pub fn with_twist(twist: Rat, mut roots: Vec<Rat>) -> Result<Self> {
        if twist.is_zero() {
            return Err(Error::InvalidCurve("twist must be nonzero".into()));
        }
        let n = roots.len();
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::InvalidCurve(format!("need an odd number of roots, at least 5 (got {n})")));
        }
        roots.sort();
        if let Some(w) = roots.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidCurve(format!("repeated root {}", w[0])));
        }
        Ok(RosenhainCurve { genus: (n - 1) / 2, twist, roots })
    }

    /// Convenience constructor from integer roots.
    pub fn from_ints(roots: &[i64]) -> Result<Self> {
        Self::new(roots.iter().map(|&r| Rat::from(r)).collect())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn twist(&self) -> &Rat {
        &self.twist
    }

    pub fn roots(&self) -> &[Rat] {
        &self.roots
    }

    /// True iff both 0 and 1 are roots.
    pub fn is_normalized(&self) -> bool {
        self.roots.contains(&Rat::zero()) && self.roots.contains(&Rat::one())
    }

    /// The roots other than 0 and 1 of a normalized curve.
    pub fn lambdas(&self) -> Result<Vec<Rat>> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(self.roots.iter().filter(|r| !r.is_zero() && !r.is_one()).cloned().collect())
    }

    /// Same roots with a different twist.
    pub fn retwist(&self, twist: Rat) -> Result<Self> {
        Self::with_twist(twist, self.roots.clone())
    }

    /// Image of the roots under `x -> a x + b`.
    pub fn affine_image(&self, a: &Rat, b: &Rat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Self::with_twist(self.twist.clone(), self.roots.iter().map(|r| a * r + b).collect())
    }

    /// All `(i, j, r_i - r_j)` for `i < j` over the sorted roots.
    pub fn differences(&self) -> Vec<(usize, usize, Rat)> {
        let n = self.roots.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, &self.roots[i] - &self.roots[j]));
            }
        }
        out
    }
}

impl fmt::Display for RosenhainCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = ")?;
        if !self.twist.is_one() {
            write!(f, "({}) * ", self.twist)?;
        }
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if r.is_zero() {
                write!(f, "x")?;
            } else if r.numer() < &Int::from(0) {
                write!(f, "(x + {})", -r)?;
            } else {
                write!(f, "(x - {r})")?;
            }
        }
        Ok(())
    }
}

/// The curve with roots `0, 1, ..., 2g`; it has potential good reduction at
/// every odd prime `p > 2g`.
pub fn good_example(g: usize, p: &Int) -> Result<RosenhainCurve> {
    if !crate::arith::is_prime_fast(p) {
        return Err(Error::NonPrimeModulus(p.to_string()));
    }
    if *p <= Int::from(2 * g) {
        return Err(Error::PrimeTooSmall { p: p.to_string(), g });
    }
    RosenhainCurve::from_ints(&(0..=2 * g as i64).collect::<Vec<_>>())
}

/// Deterministic pseudorandom normalized curve of genus `g`: roots 0 and 1
/// plus `2g - 1` distinct rationals `a/b` with `|a| <= height`,
/// `1 <= b <= height`.
pub fn random_curve(g: usize, height: u64, seed: u64) -> Result<RosenhainCurve> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g}")));
    }
    if height < 2 * g as u64 + 1 {
        return Err(Error::OutOfRange(format!("height {height} below 2g+1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = height as i64;
    let mut roots = vec![Rat::zero(), Rat::one()];
    while roots.len() < 2 * g + 1 {
        let num = rng.gen_range(-h..=h);
        let den = rng.gen_range(1..=h);
        let r = Rat::new(num, den).expect("positive denominator");
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.shuffle(&mut rng);
    RosenhainCurve::new(roots)
}
