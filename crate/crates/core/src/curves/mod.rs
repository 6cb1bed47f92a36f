//! Curves in Rosenhain form over the rationals: cluster pictures, potential
//! good reduction at odd primes, bad-prime sets, discriminants and geometric
//! equivalence of root sets.
//!
//! The prime 2 is never decided here. Callers that count bad primes treat it
//! as bad.

mod cluster;
mod curve;
mod mobius;
mod reduction;

pub use cluster::{cluster_picture, is_trivial, picture_of_roots, Cluster, ClusterNode, ClusterPicture};
pub use curve::{good_example, random_curve, RosenhainCurve};
pub use mobius::{canonical_roots, pgl2_equivalent, pgl2_equivalent_points, weierstrass_points, MobiusMap, P1};
pub use reduction::{
    bad_odd_primes, candidate_primes, has_pot_good_reduction_at, model_discriminant, odd_part, unit_criterion_at,
    BadPrimeSet, BadPrimeWitness,
};
