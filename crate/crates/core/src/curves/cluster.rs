//! Cluster pictures of a root set at an odd prime.
//!
//! A cluster is a set of roots cut out by a p-adic disc. For a finite set of
//! rationals the clusters are exactly the classes of the relations
//! `v_p(r - r') >= d`, which nest into a tree because the valuation of a
//! difference is ultrametric. Each cluster carries its depth, the minimum
//! valuation of a difference of two of its members.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::curve::RosenhainCurve;
use crate::arith::{is_prime, valuation, Int, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterPicture {
    #[serde(with = "crate::arith::int_string")]
    pub prime: Int,
    pub top: Cluster,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub depth: i64,
    /// Ascending.
    pub members: Vec<Rat>,
    /// Ordered by smallest member.
    pub children: Vec<ClusterNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClusterNode {
    Root(Rat),
    Cluster(Cluster),
}

impl ClusterNode {
    fn min_member(&self) -> &Rat {
        match self {
            ClusterNode::Root(r) => r,
            ClusterNode::Cluster(c) => &c.members[0],
        }
    }
}

/// Rejects 2 and non-primes.
pub(crate) fn check_odd_prime(p: &Int) -> Result<()> {
    if *p == Int::from(2) {
        return Err(Error::EvenPrime);
    }
    if *p <= Int::from(1) || !is_prime(p)?.0 {
        return Err(Error::NonPrimeModulus(p.to_string()));
    }
    Ok(())
}

pub fn cluster_picture(curve: &RosenhainCurve, p: &Int) -> Result<ClusterPicture> {
    check_odd_prime(p)?;
    Ok(picture_of_roots(curve.roots(), p))
}

/// Cluster picture of any set of at least two distinct rationals; `p` is
/// assumed to be an odd prime.
pub fn picture_of_roots(roots: &[Rat], p: &Int) -> ClusterPicture {
    let mut roots = roots.to_vec();
    roots.sort();
    let n = roots.len();
    let mut vals = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = valuation(p, &(&roots[i] - &roots[j])).finite().expect("roots are distinct");
            vals[i][j] = v;
            vals[j][i] = v;
        }
    }
    let all: Vec<usize> = (0..n).collect();
    ClusterPicture { prime: p.clone(), top: build(&all, &vals, &roots) }
}

fn build(idx: &[usize], vals: &[Vec<i64>], roots: &[Rat]) -> Cluster {
    let depth = idx
        .iter()
        .flat_map(|&i| idx.iter().filter(move |&&j| j > i).map(move |&j| vals[i][j]))
        .min()
        .expect("cluster has at least two members");
    // Classes of `v > depth` (an equivalence relation by the ultrametric property).
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in idx {
        match classes.iter_mut().find(|c| vals[c[0]][i] > depth) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let mut children: Vec<ClusterNode> = classes
        .into_iter()
        .map(|c| {
            if c.len() == 1 {
                ClusterNode::Root(roots[c[0]].clone())
            } else {
                ClusterNode::Cluster(build(&c, vals, roots))
            }
        })
        .collect();
    children.sort_by(|a, b| a.min_member().cmp(b.min_member()));
    let mut members: Vec<Rat> = idx.iter().map(|&i| roots[i].clone()).collect();
    members.sort();
    Cluster { depth, members, children }
}

impl ClusterPicture {
    /// True iff the only clusters are the singletons and the whole root set.
    pub fn is_trivial(&self) -> bool {
        self.top.children.iter().all(|c| matches!(c, ClusterNode::Root(_)))
    }

    /// Every cluster of size at least two, top included, in pre-order.
    pub fn clusters(&self) -> Vec<&Cluster> {
        fn walk<'a>(c: &'a Cluster, out: &mut Vec<&'a Cluster>) {
            out.push(c);
            for child in &c.children {
                if let ClusterNode::Cluster(cc) = child {
                    walk(cc, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.top, &mut out);
        out
    }

    /// Clusters of size at least two other than the whole set.
    pub fn proper_clusters(&self) -> Vec<&Cluster> {
        self.clusters().into_iter().skip(1).collect()
    }
}

pub fn is_trivial(pic: &ClusterPicture) -> bool {
    pic.is_trivial()
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match c {
                ClusterNode::Root(r) => write!(f, "{r}")?,
                ClusterNode::Cluster(cc) => write!(f, "{{{cc}}}_{}", cc.depth)?,
            }
        }
        Ok(())
    }
}

/// `(` items `)_depth`, where an item is a root or `{` items `}_depth`.
impl fmt::Display for ClusterPicture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_{}", self.top, self.top.depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pic(roots: &[i64], p: i64) -> ClusterPicture {
        cluster_picture(&RosenhainCurve::from_ints(roots).unwrap(), &Int::from(p)).unwrap()
    }

    #[test]
    fn small_examples() {
        let p = pic(&[0, 1, 2, 3, 4], 3);
        assert_eq!(p.to_string(), "({0 3}_1 {1 4}_1 2)_0");
        assert!(!p.is_trivial());
        assert_eq!(p.proper_clusters().len(), 2);

        let p = pic(&[0, 1, 2, 3, 4], 7);
        assert!(p.is_trivial());
        assert_eq!(p.to_string(), "(0 1 2 3 4)_0");

        let p = pic(&[0, 2, 3, 4, 6], 3);
        assert_eq!(p.to_string(), "({0 3 6}_1 2 4)_0");
        assert!(!is_trivial(&p));
    }

    #[test]
    fn nested_and_fractional() {
        // 0, 9 agree to depth 2; with 3 they form a depth-1 cluster.
        let p = pic(&[0, 3, 9, 1, 2], 3);
        assert_eq!(p.to_string(), "({{0 9}_2 3}_1 1 2)_0");
        // Denominators give negative depths.
        let roots = vec![rat(1, 9), rat(2, 9), rat(0, 1), rat(1, 1), rat(4, 9)];
        let q = picture_of_roots(&roots, &Int::from(3));
        assert_eq!(q.top.depth, -2);
        assert_eq!(q.to_string(), "({0 1}_0 {1/9 4/9}_-1 2/9)_-2");
    }

    #[test]
    fn two_roots_always_trivial() {
        let q = picture_of_roots(&[rat(0, 1), rat(27, 1)], &Int::from(3));
        assert!(q.is_trivial());
        assert_eq!(q.top.depth, 3);
    }

    #[test]
    fn prime_checks() {
        let c = RosenhainCurve::from_ints(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(cluster_picture(&c, &Int::from(2)), Err(Error::EvenPrime));
        assert!(matches!(cluster_picture(&c, &Int::from(15)), Err(Error::NonPrimeModulus(_))));
    }
}
