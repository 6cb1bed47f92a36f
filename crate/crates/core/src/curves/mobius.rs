//! Möbius transformations of the rational projective line and equivalence of
//! Weierstrass point sets.
//!
//! Two curves with all Weierstrass points rational are geometrically
//! isomorphic exactly when some `x -> (ax + b)/(cx + d)` carries one
//! Weierstrass set (roots plus infinity) onto the other. A Möbius map is
//! fixed by the images of three points, and three rational points go to
//! three rational points by a rational map, so trying every target triple for
//! one fixed source triple is a complete search.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int_string, lcm_all, Int, Rat};
use crate::error::{Error, Result};

/// A point of the projective line over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1 {
    Finite(Rat),
    Infinity,
}

impl P1 {
    fn homogeneous(&self) -> (Rat, Rat) {
        match self {
            P1::Finite(r) => (r.clone(), Rat::one()),
            P1::Infinity => (Rat::one(), Rat::zero()),
        }
    }

    fn from_homogeneous(x: Rat, y: Rat) -> P1 {
        if y.is_zero() {
            P1::Infinity
        } else {
            P1::Finite(x / y)
        }
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Finite(r) => write!(f, "{r}"),
            P1::Infinity => write!(f, "inf"),
        }
    }
}

/// `x -> (a x + b) / (c x + d)`, stored as a primitive integer matrix whose
/// first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MobiusMap {
    #[serde(with = "int_string")]
    pub a: Int,
    #[serde(with = "int_string")]
    pub b: Int,
    #[serde(with = "int_string")]
    pub c: Int,
    #[serde(with = "int_string")]
    pub d: Int,
}

impl MobiusMap {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::InvalidCurve("singular Möbius matrix".into()));
        }
        let den = lcm_all([a.denom(), b.denom(), c.denom(), d.denom()]);
        let scale = Rat::from(den);
        let mut e: Vec<Int> = [a, b, c, d].iter().map(|x| (x * &scale).numer().clone()).collect();
        let g = e.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        for x in e.iter_mut() {
            *x /= &g;
        }
        if e.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in e.iter_mut() {
                *x = -x.clone();
            }
        }
        let [a, b, c, d]: [Int; 4] = e.try_into().expect("four entries");
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusMap { a: Int::one(), b: Int::zero(), c: Int::zero(), d: Int::one() }
    }

    /// `x -> a x + b`.
    pub fn affine(a: Rat, b: Rat) -> Result<Self> {
        Self::new(a, b, Rat::zero(), Rat::one())
    }

    fn entries(&self) -> [Rat; 4] {
        [&self.a, &self.b, &self.c, &self.d].map(|x| Rat::from(x.clone()))
    }

    pub fn apply(&self, x: &P1) -> P1 {
        let [a, b, c, d] = self.entries();
        let (u, v) = x.homogeneous();
        P1::from_homogeneous(&a * &u + &b * &v, &c * &u + &d * &v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let [a, b, c, d] = self.entries();
        let [e, f, g, h] = other.entries();
        MobiusMap::new(&a * &e + &b * &g, &a * &f + &b * &h, &c * &e + &d * &g, &c * &f + &d * &h)
            .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> MobiusMap {
        let [a, b, c, d] = self.entries();
        MobiusMap::new(d, -b, -c, a).expect("invertible")
    }

    /// The unique map sending `src[i]` to `dst[i]`, if both triples are
    /// distinct.
    pub fn from_triples(src: [&P1; 3], dst: [&P1; 3]) -> Option<MobiusMap> {
        let s = standard_matrix(src)?;
        let t = standard_matrix(dst)?;
        MobiusMap::from_matrix(mat_mul(&t, &adjugate(&s)))
    }

    fn from_matrix(m: Mat) -> Option<MobiusMap> {
        let [a, b, c, d] = m.map(Rat::from);
        MobiusMap::new(a, b, c, d).ok()
    }
}

/// Integer 2x2 matrix `[a, b, c, d]`, defined up to scale.
type Mat = [Int; 4];

/// Primitive integer coordinates `(x, y)` with `y > 0`, or `(1, 0)`.
fn homogeneous_int(p: &P1) -> (Int, Int) {
    match p {
        P1::Finite(r) => (r.numer().clone(), r.denom().clone()),
        P1::Infinity => (Int::one(), Int::zero()),
    }
}

fn normalize_pair(x: Int, y: Int) -> (Int, Int) {
    let g = x.gcd(&y);
    let (x, y) = (x / &g, y / &g);
    if y.is_negative() || (y.is_zero() && x.is_negative()) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// A matrix sending `inf, 0, 1` to `z1, z2, z3` (distinct).
fn standard_matrix(z: [&P1; 3]) -> Option<Mat> {
    let (x1, y1) = homogeneous_int(z[0]);
    let (x2, y2) = homogeneous_int(z[1]);
    let (x3, y3) = homogeneous_int(z[2]);
    let alpha = &x3 * &y2 - &x2 * &y3;
    let beta = &x1 * &y3 - &x3 * &y1;
    if alpha.is_zero() || beta.is_zero() || (&x1 * &y2 - &x2 * &y1).is_zero() {
        return None;
    }
    Some([&alpha * &x1, &beta * &x2, &alpha * &y1, &beta * &y2])
}

/// Inverse up to scale.
fn adjugate([a, b, c, d]: &Mat) -> Mat {
    [d.clone(), -b, -c, a.clone()]
}

fn mat_mul([a, b, c, d]: &Mat, [e, f, g, h]: &Mat) -> Mat {
    [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h]
}

fn mat_apply([a, b, c, d]: &Mat, (u, v): &(Int, Int)) -> (Int, Int) {
    normalize_pair(a * u + b * v, c * u + d * v)
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> ({}x + {}) / ({}x + {})", self.a, self.b, self.c, self.d)
    }
}

/// Weierstrass set of an odd-degree model: infinity first, then the roots in
/// ascending order.
pub fn weierstrass_points(roots: &[Rat]) -> Vec<P1> {
    let mut r = roots.to_vec();
    r.sort();
    std::iter::once(P1::Infinity).chain(r.into_iter().map(P1::Finite)).collect()
}

/// A Möbius map carrying `w1` onto `w2` as sets, if one exists.
pub fn pgl2_equivalent_points(w1: &[P1], w2: &[P1]) -> Result<Option<MobiusMap>> {
    if w1.len() != w2.len() {
        return Err(Error::GenusMismatch(w1.len(), w2.len()));
    }
    if w1.len() < 3 {
        return Err(Error::OutOfRange(format!("{} points", w1.len())));
    }
    let target: HashSet<(Int, Int)> = w2.iter().map(homogeneous_int).collect();
    let rest: Vec<(Int, Int)> = w1[3..].iter().map(homogeneous_int).collect();
    let Some(src) = standard_matrix([&w1[0], &w1[1], &w1[2]]) else {
        return Err(Error::InvalidCurve("repeated Weierstrass point".into()));
    };
    let src_inv = adjugate(&src);
    let n = w2.len();
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let Some(dst) = standard_matrix([&w2[i], &w2[j], &w2[k]]) else {
                    continue;
                };
                let m = mat_mul(&dst, &src_inv);
                if rest.iter().all(|x| target.contains(&mat_apply(&m, x))) {
                    return Ok(MobiusMap::from_matrix(m));
                }
            }
        }
    }
    Ok(None)
}

/// A Möbius map carrying `roots1 ∪ {∞}` onto `roots2 ∪ {∞}`, if any.
pub fn pgl2_equivalent(roots1: &[Rat], roots2: &[Rat]) -> Result<Option<MobiusMap>> {
    if roots1.len() != roots2.len() {
        return Err(Error::GenusMismatch(roots1.len(), roots2.len()));
    }
    pgl2_equivalent_points(&weierstrass_points(roots1), &weierstrass_points(roots2))
}

/// Canonical representative of the geometric class of a root set.
///
/// Each Weierstrass point in turn is sent to infinity (by `x -> 1/(x - w)`),
/// the remaining finite points are normalized up to `x -> ±x + b` and scaling
/// into primitive nonnegative integers with minimum 0, and the
/// lexicographically smallest sorted vector over all choices wins. Equal
/// outputs imply Möbius equivalence and conversely.
pub fn canonical_roots(roots: &[Rat]) -> Vec<Int> {
    let points = weierstrass_points(roots);
    let mut best: Option<Vec<Int>> = None;
    for w in &points {
        let finite: Vec<Rat> = match w {
            P1::Infinity => roots.to_vec(),
            P1::Finite(w) => points
                .iter()
                .filter_map(|x| match x {
                    P1::Infinity => Some(Rat::zero()),
                    P1::Finite(r) if r == w => None,
                    P1::Finite(r) => Some((r - w).recip().expect("distinct")),
                })
                .collect(),
        };
        for sign in [Rat::one(), -Rat::one()] {
            let v = normalize_affine(finite.iter().map(|r| r * &sign).collect());
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.expect("nonempty root set")
}

/// Translate so the minimum is 0, then scale to coprime integers; sorted.
fn normalize_affine(mut v: Vec<Rat>) -> Vec<Int> {
    v.sort();
    let min = v[0].clone();
    let shifted: Vec<Rat> = v.iter().map(|r| r - &min).collect();
    let den = lcm_all(shifted.iter().map(|r| r.denom()));
    let ints: Vec<Int> = shifted.iter().map(|r| (r * Rat::from(den.clone())).numer().clone()).collect();
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}
