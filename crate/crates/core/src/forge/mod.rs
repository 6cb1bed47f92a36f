//! Conditional curve families built from prime constellations, and searches
//! for the constellations themselves.
//!
//! Three families are covered:
//!
//! * tuple curves, from `p + i (2g)!` all prime;
//! * cyclotomic curves, from `Φ_i(α k)` all prime for `i` in the index set
//!   of [`crate::bounds::d_index_set`], with `α = (2g)!`;
//! * a genus-5 family, from `m = 5040 k` with `m ± 1`, `m^2 + 1` and
//!   `m^2 ± 2m - 1` all prime.
//!
//! A [`FamilyWitness`] carries the curve, its bad odd primes, primality
//! certificates for the constellation and the verdict against the budget.
//! The prime 2 always counts as bad.

mod families;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{int_string, Int, PrimalityCertificate};
use crate::curves::{BadPrimeSet, RosenhainCurve};
use crate::error::Error;

pub use families::{
    admissible_tuple, build_cyclotomic_curve, build_genus5_curve, build_tuple_curve, cyclotomic_members,
    cyclotomic_roots, find_cyclotomic_witness, find_cyclotomic_witness_with, find_genus5_witness,
    find_genus5_witness_with, find_tuple_witness, find_tuple_witness_with, genus5_conditions, genus5_roots,
    low_omega_search, tuple_members, tuple_roots, AdmissibleTuple, GENUS5_ALPHA, GENUS5_BUDGET,
};
pub use search::{Checkpoint, SearchControl, SearchOutcome, CHECKPOINT_VERSION, DEFAULT_INTERVAL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Tuple,
    Cyclotomic,
    Genus5,
}

/// Which last root the tuple family uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionMode {
    /// `2p + (2g - 2)(2g)!`: every difference stays inside the constellation.
    #[default]
    Corrected,
    /// `2p + 2g (2g)!` as originally written.
    PaperExact,
}

impl FromStr for ConstructionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "corrected" => Ok(ConstructionMode::Corrected),
            "paper-exact" => Ok(ConstructionMode::PaperExact),
            _ => Err(Error::Parse(format!("mode {s:?}; expected corrected or paper-exact"))),
        }
    }
}

impl fmt::Display for ConstructionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionMode::Corrected => "corrected",
            ConstructionMode::PaperExact => "paper-exact",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A family member with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyWitness {
    pub kind: FamilyKind,
    pub g: usize,
    /// `p` for tuple curves, `k` otherwise.
    #[serde(with = "int_string")]
    pub parameter: Int,
    pub mode: ConstructionMode,
    pub curve: RosenhainCurve,
    pub bad_primes: BadPrimeSet,
    /// Allowed number of bad primes, 2 included.
    pub budget: u64,
    pub certificates: Vec<PrimalityCertificate>,
    pub verdict: Verdict,
}

impl FamilyWitness {
    /// `|B_odd ∪ {2}|`.
    pub fn bad_count(&self) -> usize {
        self.bad_primes.count_with_two()
    }

    /// Rebuilds the witness from its kind and parameter and compares every
    /// field; also re-runs each primality certificate.
    pub fn verify(&self) -> bool {
        let fresh = match self.kind {
            FamilyKind::Tuple => build_tuple_curve(self.g, &self.parameter, self.mode),
            FamilyKind::Cyclotomic => build_cyclotomic_curve(self.g, &self.parameter),
            FamilyKind::Genus5 => build_genus5_curve(&self.parameter),
        };
        match fresh {
            Ok(w) => {
                w == *self
                    && self.certificates.iter().all(|c| c.prime && c.verify())
                    && self.bad_primes.verify()
                    && (self.verdict == Verdict::Pass) == (self.bad_count() as u64 <= self.budget)
            }
            Err(_) => false,
        }
    }
}
